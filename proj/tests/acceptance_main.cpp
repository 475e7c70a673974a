// Acceptance suite driver: one pass/fail line per criterion, nonzero exit on
// any failure.
#include <iostream>

#include "dimred/acceptance.hpp"

int main() {
  const int failures = dimred::run_acceptance(std::cout, "accept_out");
  return failures == 0 ? 0 : 1;
}
