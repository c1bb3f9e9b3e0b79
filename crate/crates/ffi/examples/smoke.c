/* Computes one nabla value on a four-object tolerance space. */
#include <stdio.h>
#include <string.h>

#include "roughmeasure.h"

int main(void) {
    const char *json =
        "{\"universe\":[\"x1\",\"x2\",\"x3\",\"x4\"],"
        "\"pairs\":[[\"x1\",\"x2\"],[\"x2\",\"x3\"]],"
        "\"closure\":\"reflexive-symmetric\"}";
    RmSpace *space = NULL;
    if (rm_space_from_json(json, &space) != RM_STATUS_OK) {
        fprintf(stderr, "space: %s\n", rm_last_error());
        return 1;
    }
    char *value = NULL;
    if (rm_nabla(space, "u", "ub", "ub", "{x1}", &value) != RM_STATUS_OK) {
        fprintf(stderr, "nabla: %s\n", rm_last_error());
        rm_space_free(space);
        return 1;
    }
    printf("%s\n", value);
    int ok = strcmp(value, "{x1,x2,x3}") == 0;
    rm_string_free(value);

    RmStatus bad = rm_approx(space, "q", "{x1}", &value);
    ok = ok && bad == RM_STATUS_INVALID_INPUT && rm_last_error() != NULL;
    rm_space_free(space);
    return ok ? 0 : 1;
}
