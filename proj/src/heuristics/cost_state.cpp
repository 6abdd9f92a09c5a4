#include "cdesign/cost_state.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>

namespace cdesign {

namespace {

long long over_one(int agreements) { return agreements > 1 ? agreements - 1 : 0; }

void require(const InstanceSpec& spec, std::initializer_list<Family> allowed) {
  for (Family f : allowed) {
    if (spec.family() == f) return;
  }
  throw SpecError("search state does not support " + spec.label());
}

void require_shape(const InstanceSpec& spec, const DesignMatrix& m) {
  if (m.rows() != spec.rows() || m.cols() != spec.cols()) {
    throw StructuralError(spec.label() + ": matrix has the wrong shape");
  }
}

bool is_permutation_row(const int* row, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c) {
    if (row[c] < 0 || row[c] >= n || seen[row[c]]) return false;
    seen[row[c]] = 1;
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------- EPA

EpaState::EpaState(const InstanceSpec& spec, Rng& rng)
    : m_(spec.get("m")), n_(spec.get("n")), d_(spec.get("d")), e_(m_, n_) {
  require(spec, {Family::EPA});
  for (int r = 0; r < m_; ++r) {
    int* row = e_.row(r);
    std::iota(row, row + n_, 0);
    rng.shuffle(std::span<int>(row, static_cast<std::size_t>(n_)));
  }
  rebuild();
}

EpaState::EpaState(const InstanceSpec& spec, const DesignMatrix& m)
    : m_(spec.get("m")), n_(spec.get("n")), d_(spec.get("d")), e_(m) {
  require(spec, {Family::EPA});
  require_shape(spec, m);
  if (!structure_ok()) throw StructuralError("EPA state needs permutation rows");
  rebuild();
}

void EpaState::rebuild() {
  dist_.assign(static_cast<std::size_t>(m_) * m_, 0);
  row_cost_.assign(static_cast<std::size_t>(m_), 0);
  cost_ = 0;
  for (int i = 0; i < m_; ++i) {
    for (int j = i + 1; j < m_; ++j) {
      int dist = 0;
      for (int c = 0; c < n_; ++c) dist += e_.at(i, c) != e_.at(j, c);
      dist_[idx(i, j)] = dist_[idx(j, i)] = dist;
      const int dev = std::abs(dist - d_);
      row_cost_[i] += dev;
      row_cost_[j] += dev;
      cost_ += dev;
    }
  }
}

EpaState::Move EpaState::random_move(Rng& rng) const {
  const int row = rng.index(m_);
  const int c1 = rng.index(n_);
  int c2 = rng.index(n_ - 1);
  if (c2 >= c1) ++c2;
  return {row, c1, c2};
}

long long EpaState::delta(const Move& mv) const {
  const int x = e_.at(mv.row, mv.c1);
  const int y = e_.at(mv.row, mv.c2);
  long long change = 0;
  for (int j = 0; j < m_; ++j) {
    if (j == mv.row) continue;
    const int a = e_.at(j, mv.c1);
    const int b = e_.at(j, mv.c2);
    const int before = (x != a) + (y != b);
    const int after = (y != a) + (x != b);
    const int dist = dist_[idx(mv.row, j)];
    change += std::abs(dist + after - before - d_) - std::abs(dist - d_);
  }
  return change;
}

void EpaState::apply(const Move& mv) {
  const int x = e_.at(mv.row, mv.c1);
  const int y = e_.at(mv.row, mv.c2);
  for (int j = 0; j < m_; ++j) {
    if (j == mv.row) continue;
    const int a = e_.at(j, mv.c1);
    const int b = e_.at(j, mv.c2);
    const int shift = ((y != a) + (x != b)) - ((x != a) + (y != b));
    if (shift == 0) continue;
    const int before = dist_[idx(mv.row, j)];
    const int after = before + shift;
    const int change = std::abs(after - d_) - std::abs(before - d_);
    dist_[idx(mv.row, j)] = dist_[idx(j, mv.row)] = after;
    row_cost_[mv.row] += change;
    row_cost_[j] += change;
    cost_ += change;
  }
  std::swap(e_.at(mv.row, mv.c1), e_.at(mv.row, mv.c2));
}

bool EpaState::structure_ok() const {
  for (int r = 0; r < m_; ++r) {
    if (!is_permutation_row(e_.row(r), n_)) return false;
  }
  return true;
}

bool EpaState::tallies_consistent() const {
  EpaState fresh = *this;
  fresh.rebuild();
  return fresh.dist_ == dist_ && fresh.row_cost_ == row_cost_ && fresh.cost_ == cost_;
}

// ---------------------------------------------------------------- PA

PaState::PaState(const InstanceSpec& spec, Rng& rng)
    : rows_(spec.get("N")), cols_(spec.get("k")), v_(spec.get("v")), a_(rows_, cols_) {
  require(spec, {Family::PA});
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) a_.at(r, c) = rng.index(v_);
  }
  rebuild();
}

PaState::PaState(const InstanceSpec& spec, const DesignMatrix& m)
    : rows_(spec.get("N")), cols_(spec.get("k")), v_(spec.get("v")), a_(m) {
  require(spec, {Family::PA});
  require_shape(spec, m);
  if (!structure_ok()) throw StructuralError("PA state needs entries in 0..v-1");
  rebuild();
}

void PaState::rebuild() {
  agree_.assign(static_cast<std::size_t>(rows_) * rows_, 0);
  cost_ = 0;
  for (int i = 0; i < rows_; ++i) {
    for (int j = i + 1; j < rows_; ++j) {
      int same = 0;
      for (int c = 0; c < cols_; ++c) same += a_.at(i, c) == a_.at(j, c);
      agree_[static_cast<std::size_t>(i) * rows_ + j] = agree_[static_cast<std::size_t>(j) * rows_ + i] = same;
      cost_ += over_one(same);
    }
  }
}

PaState::Move PaState::random_move(Rng& rng) const {
  const int row = rng.index(rows_);
  const int col = rng.index(cols_);
  int value = rng.index(v_ - 1);
  if (value >= a_.at(row, col)) ++value;
  return {row, col, value};
}

long long PaState::delta(const Move& mv) const {
  const int old = a_.at(mv.row, mv.col);
  if (old == mv.value) return 0;
  const int* agree_row = agree_.data() + static_cast<std::size_t>(mv.row) * rows_;
  long long change = 0;
  for (int j = 0; j < rows_; ++j) {
    if (j == mv.row) continue;
    const int x = a_.at(j, mv.col);
    const int shift = (x == mv.value) - (x == old);
    if (shift == 0) continue;
    change += over_one(agree_row[j] + shift) - over_one(agree_row[j]);
  }
  return change;
}

void PaState::apply(const Move& mv) {
  const int old = a_.at(mv.row, mv.col);
  if (old == mv.value) return;
  for (int j = 0; j < rows_; ++j) {
    if (j == mv.row) continue;
    const int x = a_.at(j, mv.col);
    const int shift = (x == mv.value) - (x == old);
    if (shift == 0) continue;
    int& fwd = agree_[static_cast<std::size_t>(mv.row) * rows_ + j];
    cost_ += over_one(fwd + shift) - over_one(fwd);
    fwd += shift;
    agree_[static_cast<std::size_t>(j) * rows_ + mv.row] = fwd;
  }
  a_.at(mv.row, mv.col) = mv.value;
}

bool PaState::structure_ok() const {
  return std::all_of(a_.data().begin(), a_.data().end(), [&](int x) { return x >= 0 && x < v_; });
}

bool PaState::tallies_consistent() const {
  PaState fresh = *this;
  fresh.rebuild();
  return fresh.agree_ == agree_ && fresh.cost_ == cost_;
}

// ---------------------------------------------------------------- Weighing

WeighingState::WeighingState(const InstanceSpec& spec, Rng& rng)
    : n_(spec.get("n")),
      w_(spec.get("w")),
      skew_(spec.family() == Family::SkewW),
      free_cells_(skew_ ? 1LL * n_ * (n_ - 1) / 2 : 1LL * n_ * (n_ + 1) / 2),
      w_mat_(n_, n_) {
  require(spec, {Family::SymmW, Family::SkewW});
  for (int i = 0; i < n_; ++i) {
    for (int j = skew_ ? i + 1 : i; j < n_; ++j) {
      const int x = rng.index(3) - 1;
      w_mat_.at(i, j) = x;
      w_mat_.at(j, i) = skew_ ? -x : x;
    }
  }
  rebuild();
}

WeighingState::WeighingState(const InstanceSpec& spec, const DesignMatrix& m)
    : n_(spec.get("n")),
      w_(spec.get("w")),
      skew_(spec.family() == Family::SkewW),
      free_cells_(skew_ ? 1LL * n_ * (n_ - 1) / 2 : 1LL * n_ * (n_ + 1) / 2),
      w_mat_(m) {
  require(spec, {Family::SymmW, Family::SkewW});
  require_shape(spec, m);
  if (!structure_ok()) throw StructuralError("weighing state needs a symmetric/skew {-1,0,1} matrix");
  rebuild();
}

void WeighingState::rebuild() {
  gram_.assign(static_cast<std::size_t>(n_) * n_, 0);
  scratch_i_.assign(static_cast<std::size_t>(n_), 0);
  scratch_j_.assign(static_cast<std::size_t>(n_), 0);
  cost_ = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      int dot = 0;
      for (int c = 0; c < n_; ++c) dot += w_mat_.at(i, c) * w_mat_.at(j, c);
      gram_[idx(i, j)] = gram_[idx(j, i)] = dot;
      cost_ += i == j ? std::abs(dot - w_) : std::abs(dot);
    }
  }
}

WeighingState::Move WeighingState::random_move(Rng& rng) const {
  // Rejection over the full square keeps every free cell equally likely.
  int i = 0;
  int j = 0;
  do {
    i = rng.index(n_);
    j = rng.index(n_);
  } while (skew_ ? i >= j : i > j);
  const int current = w_mat_.at(i, j);
  int value = rng.index(2) - 1;  // one of {-1, 0}, shifted past current
  if (value >= current) ++value;
  return {i, j, value};
}

void WeighingState::gram_after(const Move& mv, std::vector<int>& gi, std::vector<int>& gj) const {
  const int i = mv.i;
  const int j = mv.j;
  const int a = mv.value - w_mat_.at(i, j);
  const int s = skew_ ? -1 : 1;
  const int* Gi = gram_.data() + idx(i, 0);
  const int* Gj = gram_.data() + idx(j, 0);
  if (i == j) {
    for (int k = 0; k < n_; ++k) gi[k] = Gi[k] + a * w_mat_.at(k, i);
    gi[i] = Gi[i] + 2 * a * w_mat_.at(i, i) + a * a;
    return;
  }
  for (int k = 0; k < n_; ++k) {
    gi[k] = Gi[k] + a * w_mat_.at(k, j);
    gj[k] = Gj[k] + s * a * w_mat_.at(k, i);
  }
  gi[j] = gj[i] = Gi[j] + a * w_mat_.at(j, j) + s * a * w_mat_.at(i, i);
  gi[i] = Gi[i] + 2 * a * w_mat_.at(i, j) + a * a;
  gj[j] = Gj[j] + 2 * s * a * w_mat_.at(j, i) + a * a;
}

long long WeighingState::delta(const Move& mv) const {
  if (mv.value == w_mat_.at(mv.i, mv.j)) return 0;
  gram_after(mv, scratch_i_, scratch_j_);
  const int i = mv.i;
  const int j = mv.j;
  const int* Gi = gram_.data() + idx(i, 0);
  const int* Gj = gram_.data() + idx(j, 0);
  long long change = 0;
  if (i == j) {
    for (int k = 0; k < n_; ++k) {
      if (k == i) continue;
      change += std::abs(scratch_i_[k]) - std::abs(Gi[k]);
    }
    return change + std::abs(scratch_i_[i] - w_) - std::abs(Gi[i] - w_);
  }
  for (int k = 0; k < n_; ++k) {
    if (k == i || k == j) continue;
    change += std::abs(scratch_i_[k]) - std::abs(Gi[k]);
    change += std::abs(scratch_j_[k]) - std::abs(Gj[k]);
  }
  change += std::abs(scratch_i_[j]) - std::abs(Gi[j]);
  change += std::abs(scratch_i_[i] - w_) - std::abs(Gi[i] - w_);
  change += std::abs(scratch_j_[j] - w_) - std::abs(Gj[j] - w_);
  return change;
}

void WeighingState::apply(const Move& mv) {
  if (mv.value == w_mat_.at(mv.i, mv.j)) return;
  const long long change = delta(mv);  // fills scratch rows
  for (int k = 0; k < n_; ++k) {
    gram_[idx(mv.i, k)] = gram_[idx(k, mv.i)] = scratch_i_[k];
  }
  if (mv.i != mv.j) {
    for (int k = 0; k < n_; ++k) {
      gram_[idx(mv.j, k)] = gram_[idx(k, mv.j)] = scratch_j_[k];
    }
  }
  w_mat_.at(mv.i, mv.j) = mv.value;
  w_mat_.at(mv.j, mv.i) = skew_ ? -mv.value : mv.value;
  cost_ += change;
}

bool WeighingState::structure_ok() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const int x = w_mat_.at(i, j);
      if (x < -1 || x > 1) return false;
      if (skew_ ? w_mat_.at(j, i) != -x : w_mat_.at(j, i) != x) return false;
    }
  }
  return true;
}

bool WeighingState::tallies_consistent() const {
  WeighingState fresh = *this;
  fresh.rebuild();
  return fresh.gram_ == gram_ && fresh.cost_ == cost_;
}

// ---------------------------------------------------------------- BTD

BtdState::BtdState(const InstanceSpec& spec, Rng& rng)
    : V_(spec.get("V")),
      B_(spec.get("B")),
      p1_(spec.get("p1")),
      p2_(spec.get("p2")),
      K_(spec.get("K")),
      L_(spec.get("L")),
      m_(V_, B_) {
  require(spec, {Family::BTD});
  for (int r = 0; r < V_; ++r) {
    int* row = m_.row(r);
    std::fill(row, row + p2_, 2);
    std::fill(row + p2_, row + p2_ + p1_, 1);
    rng.shuffle(std::span<int>(row, static_cast<std::size_t>(B_)));
  }
  rebuild();
}

BtdState::BtdState(const InstanceSpec& spec, const DesignMatrix& m)
    : V_(spec.get("V")),
      B_(spec.get("B")),
      p1_(spec.get("p1")),
      p2_(spec.get("p2")),
      K_(spec.get("K")),
      L_(spec.get("L")),
      m_(m) {
  require(spec, {Family::BTD});
  require_shape(spec, m);
  if (!structure_ok()) throw StructuralError("BTD state needs p1 ones and p2 twos in every row");
  rebuild();
}

void BtdState::rebuild() {
  const int zeros = B_ - p1_ - p2_;
  movable_rows_ = ((zeros > 0) + (p1_ > 0) + (p2_ > 0)) >= 2;
  colsum_.assign(static_cast<std::size_t>(B_), 0);
  lambda_.assign(static_cast<std::size_t>(V_) * V_, 0);
  cost_ = 0;
  for (int b = 0; b < B_; ++b) {
    for (int r = 0; r < V_; ++r) colsum_[b] += m_.at(r, b);
    cost_ += std::abs(colsum_[b] - K_);
  }
  for (int v = 0; v < V_; ++v) {
    for (int w = v + 1; w < V_; ++w) {
      int sum = 0;
      for (int b = 0; b < B_; ++b) sum += m_.at(v, b) * m_.at(w, b);
      lambda_[static_cast<std::size_t>(v) * V_ + w] = lambda_[static_cast<std::size_t>(w) * V_ + v] = sum;
      cost_ += std::abs(sum - L_);
    }
  }
}

BtdState::Move BtdState::random_move(Rng& rng) const { return random_move_in_row(rng.index(V_), rng); }

BtdState::Move BtdState::random_move_in_row(int row, Rng& rng) const {
  const int c1 = rng.index(B_);
  int c2 = 0;
  do {
    c2 = rng.index(B_);
  } while (m_.at(row, c2) == m_.at(row, c1));
  return {row, c1, c2};
}

long long BtdState::delta(const Move& mv) const {
  const int x = m_.at(mv.row, mv.c1);
  const int y = m_.at(mv.row, mv.c2);
  if (x == y) return 0;
  const int shift = y - x;
  long long change = std::abs(colsum_[mv.c1] + shift - K_) - std::abs(colsum_[mv.c1] - K_) +
                     std::abs(colsum_[mv.c2] - shift - K_) - std::abs(colsum_[mv.c2] - K_);
  const int* lam = lambda_.data() + static_cast<std::size_t>(mv.row) * V_;
  for (int w = 0; w < V_; ++w) {
    if (w == mv.row) continue;
    const int step = shift * (m_.at(w, mv.c1) - m_.at(w, mv.c2));
    if (step == 0) continue;
    change += std::abs(lam[w] + step - L_) - std::abs(lam[w] - L_);
  }
  return change;
}

void BtdState::apply(const Move& mv) {
  const int x = m_.at(mv.row, mv.c1);
  const int y = m_.at(mv.row, mv.c2);
  if (x == y) return;
  cost_ += delta(mv);
  const int shift = y - x;
  colsum_[mv.c1] += shift;
  colsum_[mv.c2] -= shift;
  for (int w = 0; w < V_; ++w) {
    if (w == mv.row) continue;
    const int step = shift * (m_.at(w, mv.c1) - m_.at(w, mv.c2));
    if (step == 0) continue;
    lambda_[static_cast<std::size_t>(mv.row) * V_ + w] += step;
    lambda_[static_cast<std::size_t>(w) * V_ + mv.row] += step;
  }
  std::swap(m_.at(mv.row, mv.c1), m_.at(mv.row, mv.c2));
}

bool BtdState::structure_ok() const {
  for (int r = 0; r < V_; ++r) {
    int ones = 0;
    int twos = 0;
    for (int c = 0; c < B_; ++c) {
      const int x = m_.at(r, c);
      if (x < 0 || x > 2) return false;
      ones += x == 1;
      twos += x == 2;
    }
    if (ones != p1_ || twos != p2_) return false;
  }
  return true;
}

bool BtdState::tallies_consistent() const {
  BtdState fresh = *this;
  fresh.rebuild();
  return fresh.colsum_ == colsum_ && fresh.lambda_ == lambda_ && fresh.cost_ == cost_;
}

// ---------------------------------------------------------------- FR

FlorentineBoard::FlorentineBoard(int rows, int n)
    : r_(rows),
      n_(n),
      cells_(rows, n, -1),
      filled_(static_cast<std::size_t>(rows), 0),
      in_row_(static_cast<std::size_t>(rows) * n, 0),
      used_(static_cast<std::size_t>(n) * n * n, 0) {}

bool FlorentineBoard::can_place(int row, int col, int symbol) const {
  if (row_uses(row, symbol)) return false;
  for (int p = 0; p < col; ++p) {
    if (used_[triple(cells_.at(row, p), symbol, col - p)]) return false;
  }
  return true;
}

void FlorentineBoard::place(int row, int col, int symbol) {
  assert(col == filled_[row] && can_place(row, col, symbol));
  for (int p = 0; p < col; ++p) used_[triple(cells_.at(row, p), symbol, col - p)] = 1;
  in_row_[static_cast<std::size_t>(row) * n_ + symbol] = 1;
  cells_.at(row, col) = symbol;
  ++filled_[row];
}

void FlorentineBoard::unplace(int row, int col) {
  assert(col == filled_[row] - 1);
  const int symbol = cells_.at(row, col);
  for (int p = 0; p < col; ++p) used_[triple(cells_.at(row, p), symbol, col - p)] = 0;
  in_row_[static_cast<std::size_t>(row) * n_ + symbol] = 0;
  cells_.at(row, col) = -1;
  --filled_[row];
}

bool FlorentineBoard::tallies_consistent() const {
  std::vector<unsigned char> used(used_.size(), 0);
  std::vector<unsigned char> in_row(in_row_.size(), 0);
  for (int r = 0; r < r_; ++r) {
    for (int q = 0; q < filled_[r]; ++q) {
      const int b = cells_.at(r, q);
      if (in_row[static_cast<std::size_t>(r) * n_ + b]) return false;
      in_row[static_cast<std::size_t>(r) * n_ + b] = 1;
      for (int p = 0; p < q; ++p) {
        auto& slot = used[triple(cells_.at(r, p), b, q - p)];
        if (slot) return false;
        slot = 1;
      }
    }
  }
  return used == used_ && in_row == in_row_;
}

// ---------------------------------------------------------------- scratch

long long scratch_cost(const InstanceSpec& spec, const DesignMatrix& m) {
  long long total = 0;
  switch (spec.family()) {
    case Family::EPA: {
      const int d = spec.get("d");
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = i + 1; j < m.rows(); ++j) {
          int dist = 0;
          for (int c = 0; c < m.cols(); ++c) dist += m.at(i, c) != m.at(j, c);
          total += std::abs(dist - d);
        }
      }
      return total;
    }
    case Family::PA: {
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = i + 1; j < m.rows(); ++j) {
          int same = 0;
          for (int c = 0; c < m.cols(); ++c) same += m.at(i, c) == m.at(j, c);
          total += over_one(same);
        }
      }
      return total;
    }
    case Family::SymmW:
    case Family::SkewW: {
      const int w = spec.get("w");
      for (int i = 0; i < m.rows(); ++i) {
        for (int j = i; j < m.rows(); ++j) {
          int dot = 0;
          for (int c = 0; c < m.cols(); ++c) dot += m.at(i, c) * m.at(j, c);
          total += i == j ? std::abs(dot - w) : std::abs(dot);
        }
      }
      return total;
    }
    case Family::BTD: {
      const int K = spec.get("K");
      const int L = spec.get("L");
      for (int b = 0; b < m.cols(); ++b) {
        int sum = 0;
        for (int r = 0; r < m.rows(); ++r) sum += m.at(r, b);
        total += std::abs(sum - K);
      }
      for (int v = 0; v < m.rows(); ++v) {
        for (int w = v + 1; w < m.rows(); ++w) {
          int sum = 0;
          for (int b = 0; b < m.cols(); ++b) sum += m.at(v, b) * m.at(w, b);
          total += std::abs(sum - L);
        }
      }
      return total;
    }
    case Family::FR: {
      // Occurrences of a (a, b, step) triple beyond its first.
      const int n = spec.get("n");
      std::vector<int> seen(static_cast<std::size_t>(n) * n * n, 0);
      for (int r = 0; r < m.rows(); ++r) {
        for (int p = 0; p < m.cols(); ++p) {
          for (int q = p + 1; q < m.cols(); ++q) {
            int& count = seen[(static_cast<std::size_t>(m.at(r, p)) * n + m.at(r, q)) * n + (q - p)];
            if (count++) ++total;
          }
        }
      }
      return total;
    }
  }
  return total;
}

}  // namespace cdesign
