// One line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <iostream>
#include <thread>

#include "slopegap/acceptance.hpp"
#include "fixtures.hpp"

int main() {
  slopegap::AcceptanceOptions o;
  o.heptagon_config = fixtures::config("double_heptagon.json");
  o.pentagon_config = fixtures::config("double_pentagon.json");
  o.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto results = slopegap::run_acceptance(o);
  return slopegap::print_acceptance(std::cout, results) ? 0 : 1;
}
