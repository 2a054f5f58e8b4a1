/*
 * Copyright 2026 The bdslab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* The public header must compile as C and link against the shared library. */

#include <math.h>
#include <stdio.h>

#include "bdslab/bdslab.h"

int main(void) {
  bds_scenario* s = NULL;
  bds_revenue_report rep;
  bds_price_policy eq = {BDS_PRICE_EQUILIBRIUM, 0.0};
  double rer = 0.0;
  if (bds_scenario_create_optimal(0.18, 0.15, 1.0, &s) != BDS_OK) return 1;
  if (bds_revenue_report_compute(s, eq, &rep) != BDS_OK) return 1;
  bds_scenario_destroy(s);
  if (bds_rer(rep.bds_miner_total, 0.18 * 0.0876934, &rer) != BDS_OK) return 1;
  printf("bds miner RER %.4f\n", rer);
  return fabs(rer - 0.8405) < 1e-3 ? 0 : 1;
}
