// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "mawtap/regions.hpp"

int main() {
  using namespace mawtap;
  for (const AntennaConfig c : {AntennaConfig{2, 2, 4, 1}, AntennaConfig{2, 2, 3, 1}, AntennaConfig{3, 3, 2, 1},
                                AntennaConfig{3, 1, 2, 3}, AntennaConfig{3, 1, 2, 2}, AntennaConfig{3, 2, 2, 1}}) {
    const auto plan = jamming_plan(c);
    std::cout << c << "  D_s=" << sum_sdof(c) << "  " << to_string(classify_case(c)) << "  T=" << plan.extension;
    for (int tx : {1, 2}) {
      std::cout << "  tx" << tx << "[";
      for (const auto& p : plan.parts(tx)) std::cout << ' ' << to_string(p.method) << ':' << p.dims;
      std::cout << " ]";
    }
    std::cout << "  js=" << plan.js << "  d=(" << plan.d1 << ',' << plan.d2 << ")\n";
  }
}
