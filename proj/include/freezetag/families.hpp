#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "freezetag/instance.hpp"

namespace freezetag::families {

struct FamilyParams {
  int k = 2;
  int n = 8;
  int q = 1;                 // robots per leaf/vertex; 0 picks random counts in 1..3
  double epsilon = 0.01;
  std::uint64_t seed = 1;
  int placement = -1;        // online-adversary: populous neighbor index, -1 for the worst one
};

const std::vector<std::string>& family_names();

// Pure function of (family, params). Throws ParameterError for unknown names or bad parameters.
Instance generate(const std::string& family, const FamilyParams& params);

// 2^k - 1 unit spokes, 2^k spokes of length k and one of length 3k, one robot per leaf.
Instance sef_tight(int k);
// One spoke of length 1 + epsilon with n - 1 robots and n - 1 unit spokes with one robot.
Instance sef_bad(int n, double epsilon);
// n/2 unit spokes and n/2 spokes of length log2(n), one robot per leaf.
Instance rd_bad(int n);

// Seeded 64-bit Mersenne twister with portable conversions (std distributions
// are implementation-defined, which would break bit-stable output).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 engine_;
};

Instance random_star(int spokes, int q, Rng& rng);
Instance random_graph(int vertices, int q, Rng& rng);
Instance random_points(int n, Rng& rng);

}  // namespace freezetag::families
