#include <stdio.h>
#include <string.h>

#include "prodfrac.h"

int main(void) {
    PfPoly *f = NULL;
    PfExpansion *e = NULL;
    char *json = NULL;

    if (pf_poly_parse("x^4", &f) != PF_STATUS_OK) return 1;
    if (pf_expand(f, 3, &e) != PF_STATUS_OK) return 2;
    if (pf_expansion_specialize_json(e, "2", &json) != PF_STATUS_OK) return 3;
    printf("%s\n", json);
    pf_string_free(json);
    pf_expansion_free(e);
    pf_poly_free(f);

    PfPoly *bad = NULL;
    PfStatus st = pf_poly_parse("x^(-1)", &bad);
    if (st != PF_STATUS_PARSE_ERROR || bad != NULL) return 4;
    printf("%s: %s\n", pf_status_name(st), pf_last_error_message());
    return 0;
}
