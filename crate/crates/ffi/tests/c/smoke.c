#include <stdio.h>
#include <string.h>

#include "pkarr.h"

static int fail(const char *what) {
    const char *e = pkarr_last_error();
    fprintf(stderr, "%s: %s\n", what, e ? e : "(no message)");
    return 1;
}

int main(void) {
    PkarrArrangement *q = NULL;
    if (pkarr_catalog_build("quadrilateral", NULL, 0, &q) != PKARR_STATUS_OK) return fail("build");

    size_t n = 0;
    if (pkarr_arrangement_line_count(q, &n) != PKARR_STATUS_OK || n != 6) return fail("line count");

    char *json = NULL;
    bool passes = false;
    if (pkarr_check_json(q, PKARR_CHECK_REQUIRE_EQUALITY, &json, &passes) != PKARR_STATUS_OK) return fail("check");
    if (!passes || strstr(json, "\"pk_candidate_equality\"") == NULL) return fail("classification");
    pkarr_string_free(json);

    if (pkarr_arrangement_set_weights_json(q, "{\"x\":\"2/3\",\"y\":\"2/3\",\"z\":\"2/3\","
                                              "\"x-y\":\"2/3\",\"y-z\":\"2/3\",\"x-z\":\"2/3\"}") != PKARR_STATUS_OK)
        return fail("weights");
    if (pkarr_check_json(q, 0, &json, &passes) != PKARR_STATUS_OK || passes) return fail("violation expected");
    pkarr_string_free(json);

    PkarrArrangement *bad = NULL;
    if (pkarr_catalog_build("no_such_entry", NULL, 0, &bad) != PKARR_STATUS_INVALID_INPUT) return fail("error code");
    if (pkarr_last_error() == NULL) return fail("missing message");

    pkarr_arrangement_free(q);
    printf("ok %s\n", pkarr_version());
    return 0;
}
