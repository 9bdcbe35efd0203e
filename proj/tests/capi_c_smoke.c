/* The public header must compile as C and the library must link from C. */
#include <stdio.h>
#include <string.h>

#include "zerodist/zerodist.h"

int main(void) {
  double v = 0.0;
  if (zd_rvm_main(1.0, 100.0, &v) != ZD_OK) return 1;
  if (zd_mu_st(-2.0, 2.0, &v) != ZD_OK || v < 0.999999 || v > 1.000001) return 1;
  if (zd_rvm_main(0.0, 1.0, &v) != ZD_ERR_INVALID_ARGUMENT) return 1;
  if (strcmp(zd_status_string(ZD_ERR_INVALID_ARGUMENT), "invalid_argument") != 0) return 1;
  printf("ok\n");
  return 0;
}
