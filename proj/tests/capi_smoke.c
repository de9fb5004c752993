/*
 * Copyright 2026 The angleopt Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Compiled as C to keep the public header C-clean.
 */
#include <angleopt/angleopt.h>

#include <math.h>
#include <string.h>

int angleopt_c_smoke(void) {
  angleopt_config* cfg = NULL;
  double value = 0;
  char* exact = NULL;
  int ok = 1;
  if (angleopt_config_conjectured(2, 4, &cfg) != ANGLEOPT_OK) return 0;
  if (angleopt_energy(cfg, INFINITY, 1e-9, &value, &exact) != ANGLEOPT_OK) ok = 0;
  if (ok && (exact == NULL || strcmp(exact, "5") != 0 || value != 5.0)) ok = 0;
  angleopt_string_free(exact);
  angleopt_config_free(cfg);
  return ok;
}
