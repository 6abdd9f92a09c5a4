#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdesign/errors.hpp"

namespace cdesign {

enum class Family { PA, SymmW, SkewW, BTD, FR, EPA };

inline constexpr Family kAllFamilies[] = {Family::PA,  Family::SymmW, Family::SkewW,
                                          Family::BTD, Family::FR,    Family::EPA};

std::string_view to_string(Family f);

/// Case-insensitive: "pa", "SymmW", "skeww", ... Throws SpecError.
Family parse_family(std::string_view tag);

/// Parameter names for a family, in canonical order:
///   PA: N k v          SymmW/SkewW: n w       FR: r n
///   BTD: V B p1 p2 R K L                      EPA: n d m
const std::vector<std::string>& parameter_names(Family f);

struct Param {
  std::string name;
  long long value = 0;

  friend bool operator==(const Param&, const Param&) = default;
};

/// A family plus its integer parameters. Always valid once constructed.
class InstanceSpec {
 public:
  /// Validates and reorders `params` into canonical order. Every name for
  /// the family must appear exactly once and nothing else.
  static InstanceSpec make(Family family, std::vector<Param> params);

  /// Parses "n=12,d=8,m=21" (whitespace around tokens is ignored).
  static InstanceSpec parse(Family family, std::string_view assignments);

  Family family() const noexcept { return family_; }
  const std::vector<Param>& params() const noexcept { return params_; }

  /// Value of a named parameter. Throws SpecError on an unknown name.
  int get(std::string_view name) const;

  /// Shape the design matrix must have.
  int rows() const;
  int cols() const;

  /// "EPA(n=12,d=8,m=21)"
  std::string label() const;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;

 private:
  InstanceSpec(Family f, std::vector<Param> p) : family_(f), params_(std::move(p)) {}

  Family family_;
  std::vector<Param> params_;
};

/// Row-major rectangle of small signed integers. Entry ranges are the
/// verifiers' business, not the container's.
class DesignMatrix {
 public:
  DesignMatrix() = default;
  DesignMatrix(int rows, int cols, int fill = 0);

  /// Throws ParseError (line = offending row, 1-based) on ragged input.
  static DesignMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  int& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  int at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  const int* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  int* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }

  const std::vector<int>& data() const noexcept { return data_; }

  friend bool operator==(const DesignMatrix&, const DesignMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

enum class ViolationKind {
  EntryOutOfRange,   // {row, col, value}
  NotPermutation,    // {row, first col, second col} holding the same symbol
  RowAgreement,      // PA: {row i, row j, col a, col b}
  NotSymmetric,      // SymmW: {i, j} with W[i][j] != W[j][i]
  NotSkew,           // SkewW: {i, j} with W[i][j] != -W[j][i] (i == j allowed)
  RowWeight,         // Weighing: {row, actual sum of squares}
  RowInnerProduct,   // Weighing: {row i, row j, actual dot product}
  RowMultiplicity,   // BTD: {row, ones, twos}
  ColumnSum,         // BTD: {col, actual}
  PairIndex,         // BTD: {row v, row w, actual sum of products}
  RepeatedStepPair,  // FR: {earlier row, later row, a, b, step}
  Distance,          // EPA: {row i, row j, actual Hamming distance}
};

std::string_view to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<int> indices;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// valid == !violation.has_value(). `violation` is the first violation in
/// the verifier's scan order; `violation_count` tallies every violated
/// constraint instance found in a full scan.
struct VerificationReport {
  bool valid = true;
  std::optional<Violation> violation;
  std::size_t violation_count = 0;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// Verifiers. Each throws StructuralError if the matrix shape does not match
// spec.rows() x spec.cols(), or SpecError if called with the wrong family.
//
// Scan order, shared by all of them: entry ranges row-major; then per-row
// properties in row order; then whole-matrix properties (symmetry in
// row-major order over the upper triangle, column sums by column); then row
// pairs (i, j), i < j, in lexicographic order. The first failure becomes
// `violation`.

/// Packing array. The defining condition "every N x 2 subarray holds every
/// ordered symbol pair at most once" is checked in its equivalent row form:
/// rows i != j whose entries agree in columns a and b would put the pair
/// (x, y) = (row i[a], row i[b]) twice in subarray (a, b), and conversely a
/// repeated pair in (a, b) means two rows agree in both columns. So the
/// array is valid iff any two distinct rows agree in at most one column.
VerificationReport verify_pa(const InstanceSpec& spec, const DesignMatrix& m);

/// Symmetric or skew weighing matrix. Checks entries in {-1,0,1}, the
/// symmetry/skewness relation, row weights, and pairwise row orthogonality.
/// Column weights follow from W W^T = wI with W square (then W^T W = wI too),
/// so they are not checked separately.
VerificationReport verify_weighing(const InstanceSpec& spec, const DesignMatrix& m);

/// Balanced ternary design incidence matrix (V x B over {0,1,2}).
VerificationReport verify_btd(const InstanceSpec& spec, const DesignMatrix& m);

/// Florentine rectangle. Step distances are positional, no wraparound.
VerificationReport verify_fr(const InstanceSpec& spec, const DesignMatrix& m);

/// Equidistant permutation array (m x n).
VerificationReport verify_epa(const InstanceSpec& spec, const DesignMatrix& m);

/// Dispatches on spec.family().
VerificationReport verify(const InstanceSpec& spec, const DesignMatrix& m);

// Matrix text format: one row per line, decimal integers separated by
// spaces or tabs, blank lines and lines starting with '#' ignored.

/// Throws ParseError on a bad token, a ragged row, or empty input.
DesignMatrix parse_matrix(std::string_view text);

/// Single-space separated, one row per line, trailing newline.
std::string format_matrix(const DesignMatrix& m);

/// Reads and parses a matrix file. Throws ParseError if unreadable.
DesignMatrix load_matrix_file(const std::string& path);

}  // namespace cdesign
