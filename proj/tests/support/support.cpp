#include "support.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>
#include <sstream>

#include "cdesign/cost_state.hpp"

namespace cdesign::testing {

std::string fixture_dir() { return CDESIGN_FIXTURE_DIR; }

std::vector<Fixture> load_fixtures() {
  std::vector<Fixture> out;
  for (const auto& e : load_manifest_file(fixture_dir() + "/manifest.json")) {
    out.push_back({*e.file, e.instance, load_matrix_file(fixture_dir() + "/" + *e.file)});
  }
  return out;
}

DesignMatrix cyclic_epa(int n, int m) {
  DesignMatrix e(m, n);
  for (int i = 0; i < m; ++i) {
    for (int c = 0; c < n; ++c) e.at(i, c) = (i + c) % n;
  }
  return e;
}

std::pair<int, int> entry_range(const InstanceSpec& spec) {
  switch (spec.family()) {
    case Family::PA: return {0, spec.get("v") - 1};
    case Family::SymmW:
    case Family::SkewW: return {-1, 1};
    case Family::BTD: return {0, 2};
    case Family::FR:
    case Family::EPA: return {0, spec.get("n") - 1};
  }
  return {0, 0};
}

DesignMatrix mutate_one(const InstanceSpec& spec, const DesignMatrix& m, Rng& rng) {
  const auto [lo, hi] = entry_range(spec);
  DesignMatrix out = m;
  const int r = rng.index(m.rows());
  const int c = rng.index(m.cols());
  int value = lo + rng.index(hi - lo);
  if (value >= out.at(r, c)) ++value;
  out.at(r, c) = value;
  return out;
}

namespace {

std::vector<int> random_perm(int n, Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(std::span<int>(p));
  return p;
}

}  // namespace

DesignMatrix symmetry_transform(const InstanceSpec& spec, const DesignMatrix& m, Rng& rng) {
  const int R = m.rows();
  const int C = m.cols();
  DesignMatrix out(R, C);

  if (spec.family() == Family::SymmW || spec.family() == Family::SkewW) {
    const auto p = random_perm(R, rng);
    std::vector<int> sign(static_cast<std::size_t>(R));
    for (auto& s : sign) s = rng.coin(0.5) ? -1 : 1;
    for (int i = 0; i < R; ++i) {
      for (int j = 0; j < C; ++j) out.at(i, j) = sign[i] * sign[j] * m.at(p[i], p[j]);
    }
    return out;
  }

  const auto rows = random_perm(R, rng);
  std::vector<int> cols(static_cast<std::size_t>(C));
  std::iota(cols.begin(), cols.end(), 0);
  if (spec.family() == Family::PA || spec.family() == Family::BTD) cols = random_perm(C, rng);
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < C; ++j) out.at(i, j) = m.at(rows[i], cols[j]);
  }

  if (spec.family() == Family::PA) {
    const int v = spec.get("v");
    for (int j = 0; j < C; ++j) {
      const auto sigma = random_perm(v, rng);
      for (int i = 0; i < R; ++i) out.at(i, j) = sigma[out.at(i, j)];
    }
  } else if (spec.family() == Family::EPA || spec.family() == Family::FR) {
    const auto sigma = random_perm(spec.get("n"), rng);
    for (int i = 0; i < R; ++i) {
      for (int j = 0; j < C; ++j) out.at(i, j) = sigma[out.at(i, j)];
    }
  }
  return out;
}

bool fr_feasible_bruteforce(int r, int n) {
  if (r <= 1) return true;
  // (a, b, step) triples of each permutation as a bitset; n <= 5 keeps
  // n^3 within 128 bits.
  using Triples = std::bitset<128>;
  std::vector<Triples> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    Triples t;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) t.set(static_cast<std::size_t>((p[i] * n + p[j]) * n + (j - i)));
    }
    perms.push_back(t);
  } while (std::next_permutation(p.begin(), p.end()));

  const std::size_t P = perms.size();
  std::vector<std::vector<char>> ok(P, std::vector<char>(P));
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < P; ++j) ok[i][j] = (perms[i] & perms[j]).none();
  }

  std::vector<std::size_t> chosen;
  const auto extend = [&](auto&& self, std::size_t from) -> bool {
    if (static_cast<int>(chosen.size()) == r) return true;
    for (std::size_t c = from; c < P; ++c) {
      if (std::all_of(chosen.begin(), chosen.end(), [&](std::size_t x) { return ok[x][c]; })) {
        chosen.push_back(c);
        if (self(self, c + 1)) return true;
        chosen.pop_back();
      }
    }
    return false;
  };
  return extend(extend, 0);
}

namespace {

void note(PropertyStats& s, bool ok, const std::string& what) {
  ++s.checks;
  if (!ok) {
    if (s.failures == 0) s.first_failure = what;
    ++s.failures;
  }
}

template <class State>
void walk_incremental(const InstanceSpec& spec, long long moves, Rng& rng, PropertyStats& s) {
  State state(spec, rng);
  note(s, state.cost() == scratch_cost(spec, state.render()), "initial cost");
  if (!state.has_moves()) return;
  for (long long k = 0; k < moves; ++k) {
    if (k % 500 == 499) state = State(spec, rng);
    const auto mv = state.random_move(rng);
    const long long before = state.cost();
    const long long d = state.delta(mv);
    const bool take = d <= 0 || rng.coin(0.5);
    DesignMatrix probe = state.render();
    State copy = state;
    copy.apply(mv);
    const long long after = scratch_cost(spec, copy.render());
    std::ostringstream where;
    where << spec.label() << " move " << k;
    note(s, d == after - before, where.str() + ": delta");
    if (take) {
      state = std::move(copy);
      note(s, state.cost() == after, where.str() + ": cost");
      note(s, state.tallies_consistent(), where.str() + ": tallies");
      note(s, state.structure_ok(), where.str() + ": structure");
    } else {
      note(s, state.render() == probe, where.str() + ": untouched");
    }
    (state.cost() == 0 ? s.zero_cost : s.positive_cost)++;
  }
}

// Recomputes whether `symbol` may go at (row, col) straight from the cells.
bool placeable_from_cells(const DesignMatrix& cells, int row, int col, int symbol) {
  for (int c = 0; c < col; ++c) {
    if (cells.at(row, c) == symbol) return false;
  }
  for (int c = 0; c < col; ++c) {
    const int a = cells.at(row, c);
    const int step = col - c;
    for (int other = 0; other < cells.rows(); ++other) {
      if (other == row) continue;
      for (int p = 0; p + step < cells.cols(); ++p) {
        if (cells.at(other, p) == a && cells.at(other, p + step) == symbol) return false;
      }
    }
  }
  return true;
}

void walk_florentine(const InstanceSpec& spec, long long moves, Rng& rng, PropertyStats& s) {
  const int r = spec.get("r");
  const int n = spec.get("n");
  FlorentineBoard board(r, n);
  int filled = 0;
  for (long long k = 0; k < moves; ++k) {
    const int row = filled / n;
    const int col = filled % n;
    std::ostringstream where;
    where << spec.label() << " step " << k;
    const bool grow = filled < r * n && (filled == 0 || rng.coin(0.6));
    if (grow) {
      const int symbol = rng.index(n);
      const bool expect = placeable_from_cells(board.render(), row, col, symbol);
      note(s, board.can_place(row, col, symbol) == expect, where.str() + ": can_place");
      if (expect) {
        board.place(row, col, symbol);
        ++filled;
      }
    } else {
      --filled;
      board.unplace(filled / n, filled % n);
    }
    note(s, board.tallies_consistent(), where.str() + ": occupancy");
    if (filled == r * n) {
      note(s, verify_fr(spec, board.render()).valid, where.str() + ": full board valid");
      ++s.zero_cost;
    } else {
      ++s.positive_cost;
    }
  }
}

template <class State>
void linkage_walk(const InstanceSpec& spec, long long states, Rng& rng, PropertyStats& s) {
  State state(spec, rng);
  for (long long k = 0; k < states; ++k) {
    if (k % 200 == 0) state = State(spec, rng);
    if (state.has_moves() && k % 200 != 0) {
      const auto mv = state.random_move(rng);
      if (state.delta(mv) <= 0 || rng.coin(0.05)) state.apply(mv);
    }
    const bool zero = state.cost() == 0;
    const bool valid = verify(spec, state.render()).valid;
    std::ostringstream where;
    where << spec.label() << " state " << k << " cost " << state.cost() << " valid " << valid;
    note(s, zero == valid, where.str());
    (zero ? s.zero_cost : s.positive_cost)++;
  }
}

void linkage_florentine(const InstanceSpec& spec, long long states, Rng& rng, PropertyStats& s) {
  const int r = spec.get("r");
  const int n = spec.get("n");
  for (long long k = 0; k < states; ++k) {
    DesignMatrix m(r, n);
    for (int i = 0; i < r; ++i) {
      const auto p = random_perm(n, rng);
      for (int c = 0; c < n; ++c) m.at(i, c) = p[c];
    }
    const bool zero = scratch_cost(spec, m) == 0;
    const bool valid = verify_fr(spec, m).valid;
    note(s, zero == valid, spec.label() + " random rows");
    (zero ? s.zero_cost : s.positive_cost)++;
  }
}

}  // namespace

PropertyStats incremental_equivalence(const InstanceSpec& spec, long long moves, std::uint64_t seed) {
  Rng rng(seed);
  PropertyStats s;
  switch (spec.family()) {
    case Family::EPA: walk_incremental<EpaState>(spec, moves, rng, s); break;
    case Family::PA: walk_incremental<PaState>(spec, moves, rng, s); break;
    case Family::SymmW:
    case Family::SkewW: walk_incremental<WeighingState>(spec, moves, rng, s); break;
    case Family::BTD: walk_incremental<BtdState>(spec, moves, rng, s); break;
    case Family::FR: walk_florentine(spec, moves, rng, s); break;
  }
  return s;
}

PropertyStats cost_verifier_linkage(const InstanceSpec& spec, long long states, std::uint64_t seed) {
  Rng rng(seed);
  PropertyStats s;
  switch (spec.family()) {
    case Family::EPA: linkage_walk<EpaState>(spec, states, rng, s); break;
    case Family::PA: linkage_walk<PaState>(spec, states, rng, s); break;
    case Family::SymmW:
    case Family::SkewW: linkage_walk<WeighingState>(spec, states, rng, s); break;
    case Family::BTD: linkage_walk<BtdState>(spec, states, rng, s); break;
    case Family::FR: linkage_florentine(spec, states, rng, s); break;
  }
  return s;
}

std::vector<InstanceSpec> property_instances(Family f) {
  std::vector<std::string> params;
  switch (f) {
    case Family::EPA: params = {"n=3,d=2,m=3", "n=4,d=3,m=4", "n=5,d=4,m=3", "n=3,d=0,m=2", "n=6,d=6,m=4"}; break;
    case Family::PA: params = {"N=4,k=3,v=2", "N=4,k=6,v=3", "N=9,k=4,v=3", "N=5,k=3,v=3"}; break;
    case Family::SymmW: params = {"n=2,w=1", "n=3,w=2", "n=4,w=3", "n=5,w=1", "n=4,w=4"}; break;
    case Family::SkewW: params = {"n=2,w=1", "n=4,w=3", "n=4,w=2", "n=3,w=2"}; break;
    case Family::BTD:
      params = {"V=3,B=3,p1=2,p2=0,R=2,K=2,L=1", "V=4,B=6,p1=3,p2=0,R=3,K=2,L=1",
                "V=3,B=3,p1=1,p2=1,R=3,K=3,L=2", "V=4,B=4,p1=2,p2=1,R=4,K=4,L=3"};
      break;
    case Family::FR: params = {"r=2,n=3", "r=3,n=4", "r=2,n=5"}; break;
  }
  std::vector<InstanceSpec> out;
  for (const auto& p : params) out.push_back(InstanceSpec::parse(f, p));
  return out;
}

}  // namespace cdesign::testing
