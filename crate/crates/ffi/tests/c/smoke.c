#include <stdio.h>
#include <string.h>

#include "orbifold_voa.h"

int main(void) {
    OvEngine *e = NULL;
    if (ov_engine_new(2, &e) != OV_STATUS_OK) {
        fprintf(stderr, "engine: %s\n", ov_last_error());
        return 1;
    }
    uint8_t v = 0;
    if (ov_fusion(e, "Vl1", "VT1+", "VT2+", &v) != OV_STATUS_OK || v != 1) {
        return 2;
    }
    if (ov_fusion(e, "Vq", "V+", "V+", &v) != OV_STATUS_BAD_LABEL) {
        return 3;
    }
    char *s = NULL;
    if (ov_top_action(e, OV_ZHU_GEN_OMEGA, "Va-", &s) != OV_STATUS_OK || strcmp(s, "(1/2)") != 0) {
        return 4;
    }
    printf("omega on Va-: %s\n", s);
    ov_string_free(s);
    ov_engine_free(e);
    return 0;
}
