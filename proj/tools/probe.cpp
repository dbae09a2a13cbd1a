// build probe
#include "smokecast/mcmc.hpp"
#include "smokecast/life_table.hpp"
#include "smokecast/raftery_lewis.hpp"
#include "smokecast/double_logistic.hpp"
#include <iostream>
int main() {
  auto grid = smokecast::AgeGrid::abridged();
  std::vector<double> m(grid.size(), 0.0);
  m.back() = 0.5;
  std::cout << smokecast::life_table_e0(grid, m) << "\n";
}
