/* Compiles the public header as C and makes one round trip through the library. */
#include <stdio.h>

#include "desknum/desknum.h"

int main(void) {
  const double d[4] = {1, 2, 3, 4};
  dn_matrix* a = NULL;
  double det = 0.0;
  if (dn_matrix_create(2, 2, d, &a) != DN_OK) return 1;
  if (dn_det(a, &det) != DN_OK) return 1;
  dn_matrix_free(a);
  if (det > -1.999999999999 || det < -2.000000000001) {
    fprintf(stderr, "det = %g\n", det);
    return 1;
  }
  return 0;
}
