#include <stdio.h>
#include "ncpos.h"

int main(void) {
    NcposPresentation *w = NULL;
    if (ncpos_presentation_new(NCPOS_PRESET_WEYL, NULL, NULL, &w) != NCPOS_STATUS_OK) return 1;

    NcposElement *p = NULL, *q = NULL, *qp = NULL, *c = NULL, *bad = NULL;
    ncpos_element_parse(w, "p", &p);
    ncpos_element_parse(w, "q", &q);
    if (ncpos_element_mul(q, p, &qp) != NCPOS_STATUS_OK) return 2;
    char *text = NULL;
    ncpos_element_to_string(qp, &text);
    printf("qp = %s\n", text);
    ncpos_string_free(text);

    ncpos_element_parse(w, "p^2 + q^2 + 1", &c);
    char *json = NULL;
    printf("sohs: %d\n", (int)ncpos_sohs_search(c, 1, &json));
    ncpos_string_free(json);

    NcposStatus st = ncpos_element_parse(w, "p q", &bad);
    printf("parse error: %d (%s)\n", (int)st, ncpos_last_error());

    ncpos_element_free(p);
    ncpos_element_free(q);
    ncpos_element_free(qp);
    ncpos_element_free(c);
    ncpos_presentation_free(w);
    return 0;
}
