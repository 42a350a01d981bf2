#include <math.h>
#include <stdio.h>
#include <string.h>

#include "graphdyn.h"

int main(void) {
    GraphdynMap *map = NULL;
    if (graphdyn_map_builtin("tent", &map) != GRAPHDYN_STATUS_OK) {
        fprintf(stderr, "builtin: %s\n", graphdyn_last_error());
        return 1;
    }
    char *image = NULL;
    if (graphdyn_evaluate(map, "e0:1/3", &image) != GRAPHDYN_STATUS_OK || strcmp(image, "e0:2/3") != 0) {
        return 2;
    }
    graphdyn_string_free(image);
    double h = 0.0;
    if (graphdyn_entropy(map, 64, &h) != GRAPHDYN_STATUS_OK || fabs(h - log(2.0)) > 1e-9) {
        return 3;
    }
    if (graphdyn_evaluate(map, "e0:2", &image) == GRAPHDYN_STATUS_OK || graphdyn_last_error() == NULL) {
        return 4;
    }
    graphdyn_map_free(map);
    printf("ok\n");
    return 0;
}
