#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdesign/designs.hpp"
#include "cdesign/manifest.hpp"
#include "cdesign/rng.hpp"

namespace cdesign::testing {

std::string fixture_dir();

struct Fixture {
  std::string file;
  InstanceSpec instance;
  DesignMatrix matrix;
};

/// Every fixture listed in the shipped manifest, loaded.
std::vector<Fixture> load_fixtures();

/// Cyclic shifts of 0..n-1: rows i < m hold (i + c) mod n. Valid
/// EPA(n, n, m) for m <= n.
DesignMatrix cyclic_epa(int n, int m);

/// Inclusive entry range a valid matrix of this family may hold.
std::pair<int, int> entry_range(const InstanceSpec& spec);

/// Changes one random entry to a different in-range value.
DesignMatrix mutate_one(const InstanceSpec& spec, const DesignMatrix& m, Rng& rng);

/// A random transform that maps valid designs to valid designs:
/// row permutations everywhere, plus column permutations and per-column
/// symbol relabelings (PA), global symbol relabelings (EPA, FR), column
/// permutations (BTD), or simultaneous row/column permutation and signed
/// negation W -> DPWP^T D (weighing).
DesignMatrix symmetry_transform(const InstanceSpec& spec, const DesignMatrix& m, Rng& rng);

/// Exhaustive FR feasibility: FR(r, n) exists iff some r permutations are
/// pairwise compatible (share no (a, b, step) triple). Max-clique search
/// over all n! permutations.
bool fr_feasible_bruteforce(int r, int n);

struct PropertyStats {
  long long checks = 0;
  long long failures = 0;
  long long zero_cost = 0;
  long long positive_cost = 0;
  std::string first_failure;
};

/// Random walks over every move type of `spec`'s family: each proposed
/// delta is compared with the from-scratch cost difference and, after each
/// applied move, the cached tallies with a rebuild. FR exercises the DFS
/// board with random place/unplace sequences instead.
PropertyStats incremental_equivalence(const InstanceSpec& spec, long long moves, std::uint64_t seed);

/// Random structurally valid states (fresh random starts and states along
/// random walks from a known solution): cost == 0 must match the verifier
/// exactly in both directions.
PropertyStats cost_verifier_linkage(const InstanceSpec& spec, long long states, std::uint64_t seed);

/// Small instances per family used by the property checks.
std::vector<InstanceSpec> property_instances(Family f);

}  // namespace cdesign::testing
