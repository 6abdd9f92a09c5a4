#pragma once

#include <cstdint>
#include <vector>

#include "cdesign/designs.hpp"
#include "cdesign/rng.hpp"

namespace cdesign {

// Search states with incrementally maintained violation tallies. Each keeps
// its family's structural constraints by construction, so the only thing
// the cost measures is the counting constraints. For every state:
//
//   cost() == 0  <=>  verify(spec, render()) accepts
//   delta(m)     ==  cost after apply(m) minus cost before
//   tallies_consistent() holds after any sequence of apply()
//
// random_move() requires has_moves().

/// m permutation rows of length n plus the pairwise distance table.
/// cost = sum over row pairs i < j of |dist(i, j) - d|.
class EpaState {
 public:
  struct Move {
    int row;
    int c1;
    int c2;
  };

  /// Uniformly random permutation in each row.
  EpaState(const InstanceSpec& spec, Rng& rng);
  /// Rows must already be permutations of 0..n-1.
  EpaState(const InstanceSpec& spec, const DesignMatrix& m);

  bool has_moves() const { return n_ >= 2; }
  Move random_move(Rng& rng) const;
  long long delta(const Move& mv) const;
  void apply(const Move& mv);

  long long cost() const { return cost_; }
  /// sum over j != r of |dist(r, j) - d|
  long long row_cost(int r) const { return row_cost_[r]; }
  int distance(int i, int j) const { return dist_[idx(i, j)]; }
  int rows() const { return m_; }
  int cols() const { return n_; }

  DesignMatrix render() const { return e_; }
  bool tallies_consistent() const;
  bool structure_ok() const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * m_ + j; }
  void rebuild();

  int m_;
  int n_;
  int d_;
  DesignMatrix e_;
  std::vector<int> dist_;
  std::vector<long long> row_cost_;
  long long cost_ = 0;
};

/// N x k array over v symbols plus the pairwise agreement table.
/// cost = sum over row pairs of max(0, agreements - 1).
class PaState {
 public:
  struct Move {
    int row;
    int col;
    int value;
  };

  PaState(const InstanceSpec& spec, Rng& rng);
  /// Entries must lie in 0..v-1.
  PaState(const InstanceSpec& spec, const DesignMatrix& m);

  bool has_moves() const { return v_ >= 2 && rows_ > 0 && cols_ > 0; }
  Move random_move(Rng& rng) const;
  long long delta(const Move& mv) const;
  void apply(const Move& mv);

  long long cost() const { return cost_; }
  int agreements(int i, int j) const { return agree_[static_cast<std::size_t>(i) * rows_ + j]; }

  DesignMatrix render() const { return a_; }
  bool tallies_consistent() const;
  bool structure_ok() const;

 private:
  void rebuild();

  int rows_;
  int cols_;
  int v_;
  DesignMatrix a_;
  std::vector<int> agree_;
  long long cost_ = 0;
};

/// Symmetric or skew n x n matrix over {-1,0,1} plus its Gram matrix W W^T.
/// Only the upper triangle (with the diagonal for SymmW) is a free variable;
/// the mirrored cell is always written together with it, and the SkewW
/// diagonal stays 0.
/// cost = sum_{i<j} |G_ij| + sum_i |G_ii - w|.
class WeighingState {
 public:
  struct Move {
    int i;  // i <= j (i < j for SkewW)
    int j;
    int value;
  };

  WeighingState(const InstanceSpec& spec, Rng& rng);
  /// Must already be symmetric / skew with entries in {-1,0,1}.
  WeighingState(const InstanceSpec& spec, const DesignMatrix& m);

  bool has_moves() const { return free_cells_ > 0; }
  Move random_move(Rng& rng) const;
  long long delta(const Move& mv) const;
  void apply(const Move& mv);

  long long cost() const { return cost_; }
  int gram(int i, int j) const { return gram_[idx(i, j)]; }

  DesignMatrix render() const { return w_mat_; }
  bool tallies_consistent() const;
  bool structure_ok() const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  // Gram rows i and j after the move, written to scratch (row i, row j).
  void gram_after(const Move& mv, std::vector<int>& gi, std::vector<int>& gj) const;
  void rebuild();

  int n_;
  int w_;
  bool skew_;
  long long free_cells_;
  DesignMatrix w_mat_;
  std::vector<int> gram_;
  long long cost_ = 0;
  mutable std::vector<int> scratch_i_;
  mutable std::vector<int> scratch_j_;
};

/// V x B incidence matrix whose rows each hold exactly p1 ones and p2 twos,
/// plus column sums and the pairwise product table lambda.
/// cost = sum_b |colsum_b - K| + sum_{v<w} |lambda_vw - L|.
class BtdState {
 public:
  /// Swap two differing entries within one row.
  struct Move {
    int row;
    int c1;
    int c2;
  };

  BtdState(const InstanceSpec& spec, Rng& rng);
  /// Rows must already have the right multiplicities.
  BtdState(const InstanceSpec& spec, const DesignMatrix& m);

  bool has_moves() const { return movable_rows_; }
  Move random_move(Rng& rng) const;
  Move random_move_in_row(int row, Rng& rng) const;
  long long delta(const Move& mv) const;
  void apply(const Move& mv);

  long long cost() const { return cost_; }
  int column_sum(int b) const { return colsum_[b]; }
  int lambda(int v, int w) const { return lambda_[static_cast<std::size_t>(v) * V_ + w]; }

  const DesignMatrix& matrix() const { return m_; }
  DesignMatrix render() const { return m_; }
  bool tallies_consistent() const;
  bool structure_ok() const;

 private:
  void rebuild();

  int V_;
  int B_;
  int p1_;
  int p2_;
  int K_;
  int L_;
  bool movable_rows_;
  DesignMatrix m_;
  std::vector<int> colsum_;
  std::vector<int> lambda_;
  long long cost_ = 0;
};

/// Partial Florentine rectangle filled row-major, with the (a, b, step)
/// occupancy table over ordered symbol pairs and rightward step distances.
class FlorentineBoard {
 public:
  FlorentineBoard(int rows, int n);

  int rows() const { return r_; }
  int n() const { return n_; }

  /// True iff `symbol` is unused in `row` and placing it at `col` (with
  /// columns 0..col-1 of the row filled) would not reuse any triple.
  bool can_place(int row, int col, int symbol) const;
  void place(int row, int col, int symbol);
  /// Removes the last placed cell of `row`, which must be at `col`.
  void unplace(int row, int col);

  bool row_uses(int row, int symbol) const { return in_row_[static_cast<std::size_t>(row) * n_ + symbol] != 0; }
  int at(int row, int col) const { return cells_.at(row, col); }
  bool triple_used(int a, int b, int step) const { return used_[triple(a, b, step)] != 0; }

  DesignMatrix render() const { return cells_; }
  /// Recounts the occupancy table from the placed cells.
  bool tallies_consistent() const;

 private:
  std::size_t triple(int a, int b, int step) const {
    return (static_cast<std::size_t>(a) * n_ + b) * n_ + step;
  }

  int r_;
  int n_;
  DesignMatrix cells_;  // -1 = empty
  std::vector<int> filled_;
  std::vector<unsigned char> in_row_;
  std::vector<unsigned char> used_;
};

/// From-scratch cost of a rendered matrix, per the family's cost model.
/// Only meaningful for matrices satisfying the state's structural
/// constraints (permutation rows, symmetry, row multiplicities).
long long scratch_cost(const InstanceSpec& spec, const DesignMatrix& m);

}  // namespace cdesign
