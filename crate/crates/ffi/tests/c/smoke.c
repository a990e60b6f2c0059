#include <stdio.h>
#include <string.h>

#include "toral.h"

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "line %d: %s\n", __LINE__, #cond);            \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    ToralTorus *t = NULL;
    CHECK(toral_torus_parse("r2", &t) == TORAL_STATUS_OK);

    int64_t num = 0, den = 0;
    CHECK(toral_torus_radius(t, &num, &den) == TORAL_STATUS_OK);
    CHECK(num == 1 && den == 2);

    ToralCensus *c = NULL;
    CHECK(toral_census_run(t, 3, 5, &c) == TORAL_STATUS_OK);
    size_t k = 0;
    CHECK(toral_census_type_count(c, &k) == TORAL_STATUS_OK && k == 3);
    size_t counts[3];
    for (size_t i = 0; i < 3; i++) {
        CHECK(toral_census_count(c, i, &counts[i]) == TORAL_STATUS_OK);
    }
    CHECK(counts[0] == 1 && counts[1] == 2 && counts[2] == 1);

    char *json = NULL;
    CHECK(toral_census_to_json(c, &json) == TORAL_STATUS_OK);
    CHECK(strstr(json, "\"strong_unicity\": false") != NULL);
    toral_string_free(json);

    CHECK(toral_census_run(t, 0, 1, &c) == TORAL_STATUS_CONTRACT);
    CHECK(toral_last_error_message() != NULL);

    ToralTorus *bad = NULL;
    CHECK(toral_torus_parse("q7", &bad) == TORAL_STATUS_PARSE);
    CHECK(bad == NULL);

    toral_census_free(c);
    toral_torus_free(t);
    printf("ok\n");
    return 0;
}
