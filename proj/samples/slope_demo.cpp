// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <vector>

#include "mawtap/rates.hpp"

int main() {
  using namespace mawtap;
  const std::vector<double> grid{1e3, 1e5, 1e7, 1e9};
  const auto r = sweep({2, 2, 3, 1}, 0.5, grid, 10, 7);
  for (const auto& row : r.rows)
    std::printf("P=%-8.0e rx=%7.3f leak=%6.3f secrecy=%7.3f\n", row.p, row.rate_rx, row.leak_max, row.secrecy);
  std::printf("slope %.3f, theory %s\n", r.curve.slope, r.ds_theory.str().c_str());
}
