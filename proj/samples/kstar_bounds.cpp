// Prints the g_Z and g_Z^c lower bounds for the first few self-sums of Kstar.

#include <iostream>

#include "concordia/concordia.hpp"

int main() {
  using namespace concordia;
  const auto base = branched_double_cover(parse("Kstar"));
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto cover = base.self_sum(n);
    const auto gzc = gzc_lower_bound_detail(cover, 5);
    std::cout << "#^" << n << " Kstar: g_Z >= " << gz_lower_bound(cover) << ", g_Z^c >= " << gzc.bound
              << " (order-5 elements checked: " << dbar_table(cover, 5).size() << ")\n";
  }
}
