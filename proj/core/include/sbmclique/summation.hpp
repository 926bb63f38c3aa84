#pragma once

#include <cstddef>

namespace sbmclique {

// Neumaier compensated accumulator.  The clique statistics are small residues
// of sums with heavy cancellation, so plain accumulation loses the signal at
// large pool sizes.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double t = sum + x;
    if ((sum >= x ? sum : -sum) >= (x >= 0 ? x : -x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }

  void merge(const CompensatedSum& other) {
    add(other.sum);
    carry += other.carry;
  }

  double value() const { return sum + carry; }
};

}  // namespace sbmclique
