#include <sstream>

#include "cdesign/designs.hpp"

namespace cdesign {

namespace {

// Accumulates violations in scan order; the first one is kept.
class Collector {
 public:
  void add(ViolationKind kind, std::vector<int> indices) {
    if (!first_) first_ = Violation{kind, std::move(indices)};
    ++count_;
  }

  bool clean() const { return count_ == 0; }

  VerificationReport finish() && {
    VerificationReport r;
    r.valid = count_ == 0;
    r.violation = std::move(first_);
    r.violation_count = count_;
    return r;
  }

 private:
  std::optional<Violation> first_;
  std::size_t count_ = 0;
};

void require_family(const InstanceSpec& spec, std::initializer_list<Family> allowed, const char* who) {
  for (Family f : allowed) {
    if (spec.family() == f) return;
  }
  throw SpecError(std::string(who) + " called with " + std::string(to_string(spec.family())) + " instance");
}

void require_shape(const InstanceSpec& spec, const DesignMatrix& m) {
  if (m.rows() != spec.rows() || m.cols() != spec.cols()) {
    std::ostringstream os;
    os << spec.label() << " needs a " << spec.rows() << "x" << spec.cols() << " matrix, got "
       << m.rows() << "x" << m.cols();
    throw StructuralError(os.str());
  }
}

void check_range(const DesignMatrix& m, int lo, int hi, Collector& out) {
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      const int x = m.at(r, c);
      if (x < lo || x > hi) out.add(ViolationKind::EntryOutOfRange, {r, c, x});
    }
  }
}

// Assumes entries already lie in [0, n). Reports the first repeated symbol
// of each row by the columns of its two occurrences.
void check_permutation_rows(const DesignMatrix& m, int n, Collector& out) {
  std::vector<int> seen_at(static_cast<std::size_t>(n));
  for (int r = 0; r < m.rows(); ++r) {
    std::fill(seen_at.begin(), seen_at.end(), -1);
    for (int c = 0; c < m.cols(); ++c) {
      const int x = m.at(r, c);
      if (seen_at[x] >= 0) {
        out.add(ViolationKind::NotPermutation, {r, seen_at[x], c});
        break;
      }
      seen_at[x] = c;
    }
  }
}

}  // namespace

std::string_view to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::EntryOutOfRange: return "entry_out_of_range";
    case ViolationKind::NotPermutation: return "not_permutation";
    case ViolationKind::RowAgreement: return "row_agreement";
    case ViolationKind::NotSymmetric: return "not_symmetric";
    case ViolationKind::NotSkew: return "not_skew";
    case ViolationKind::RowWeight: return "row_weight";
    case ViolationKind::RowInnerProduct: return "row_inner_product";
    case ViolationKind::RowMultiplicity: return "row_multiplicity";
    case ViolationKind::ColumnSum: return "column_sum";
    case ViolationKind::PairIndex: return "pair_index";
    case ViolationKind::RepeatedStepPair: return "repeated_step_pair";
    case ViolationKind::Distance: return "distance";
  }
  return "?";
}

std::string Violation::describe() const {
  std::ostringstream os;
  const auto& ix = indices;
  auto at = [&](std::size_t i) { return i < ix.size() ? ix[i] : -1; };
  switch (kind) {
    case ViolationKind::EntryOutOfRange:
      os << "entry (" << at(0) << "," << at(1) << ") = " << at(2) << " is out of range";
      break;
    case ViolationKind::NotPermutation:
      os << "row " << at(0) << " repeats a symbol in columns " << at(1) << " and " << at(2);
      break;
    case ViolationKind::RowAgreement:
      os << "rows " << at(0) << " and " << at(1) << " agree in columns " << at(2) << " and " << at(3);
      break;
    case ViolationKind::NotSymmetric:
      os << "W[" << at(0) << "][" << at(1) << "] != W[" << at(1) << "][" << at(0) << "]";
      break;
    case ViolationKind::NotSkew:
      os << "W[" << at(0) << "][" << at(1) << "] != -W[" << at(1) << "][" << at(0) << "]";
      break;
    case ViolationKind::RowWeight:
      os << "row " << at(0) << " has weight " << at(1);
      break;
    case ViolationKind::RowInnerProduct:
      os << "rows " << at(0) << " and " << at(1) << " have inner product " << at(2);
      break;
    case ViolationKind::RowMultiplicity:
      os << "row " << at(0) << " has " << at(1) << " ones and " << at(2) << " twos";
      break;
    case ViolationKind::ColumnSum:
      os << "column " << at(0) << " sums to " << at(1);
      break;
    case ViolationKind::PairIndex:
      os << "rows " << at(0) << " and " << at(1) << " have pair index " << at(2);
      break;
    case ViolationKind::RepeatedStepPair:
      os << "rows " << at(0) << " and " << at(1) << " both place " << at(3) << " " << at(4)
         << " steps right of " << at(2);
      break;
    case ViolationKind::Distance:
      os << "rows " << at(0) << " and " << at(1) << " are at distance " << at(2);
      break;
  }
  return os.str();
}

VerificationReport verify_pa(const InstanceSpec& spec, const DesignMatrix& m) {
  require_family(spec, {Family::PA}, "verify_pa");
  require_shape(spec, m);
  const int v = spec.get("v");
  Collector out;
  check_range(m, 0, v - 1, out);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i + 1; j < m.rows(); ++j) {
      int first = -1;
      for (int c = 0; c < m.cols(); ++c) {
        if (m.at(i, c) != m.at(j, c)) continue;
        if (first < 0) {
          first = c;
        } else {
          out.add(ViolationKind::RowAgreement, {i, j, first, c});
          break;
        }
      }
    }
  }
  return std::move(out).finish();
}

VerificationReport verify_weighing(const InstanceSpec& spec, const DesignMatrix& m) {
  require_family(spec, {Family::SymmW, Family::SkewW}, "verify_weighing");
  require_shape(spec, m);
  const int n = spec.get("n");
  const int w = spec.get("w");
  const bool skew = spec.family() == Family::SkewW;
  Collector out;
  check_range(m, -1, 1, out);
  for (int i = 0; i < n; ++i) {
    for (int j = skew ? i : i + 1; j < n; ++j) {
      if (skew && m.at(i, j) != -m.at(j, i)) out.add(ViolationKind::NotSkew, {i, j});
      if (!skew && m.at(i, j) != m.at(j, i)) out.add(ViolationKind::NotSymmetric, {i, j});
    }
  }
  for (int i = 0; i < n; ++i) {
    int weight = 0;
    for (int c = 0; c < n; ++c) weight += m.at(i, c) * m.at(i, c);
    if (weight != w) out.add(ViolationKind::RowWeight, {i, weight});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int dot = 0;
      for (int c = 0; c < n; ++c) dot += m.at(i, c) * m.at(j, c);
      if (dot != 0) out.add(ViolationKind::RowInnerProduct, {i, j, dot});
    }
  }
  return std::move(out).finish();
}

VerificationReport verify_btd(const InstanceSpec& spec, const DesignMatrix& m) {
  require_family(spec, {Family::BTD}, "verify_btd");
  require_shape(spec, m);
  const int p1 = spec.get("p1");
  const int p2 = spec.get("p2");
  const int K = spec.get("K");
  const int L = spec.get("L");
  Collector out;
  check_range(m, 0, 2, out);
  for (int r = 0; r < m.rows(); ++r) {
    int ones = 0;
    int twos = 0;
    for (int c = 0; c < m.cols(); ++c) {
      ones += m.at(r, c) == 1;
      twos += m.at(r, c) == 2;
    }
    if (ones != p1 || twos != p2) out.add(ViolationKind::RowMultiplicity, {r, ones, twos});
  }
  for (int c = 0; c < m.cols(); ++c) {
    int sum = 0;
    for (int r = 0; r < m.rows(); ++r) sum += m.at(r, c);
    if (sum != K) out.add(ViolationKind::ColumnSum, {c, sum});
  }
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i + 1; j < m.rows(); ++j) {
      int lambda = 0;
      for (int c = 0; c < m.cols(); ++c) lambda += m.at(i, c) * m.at(j, c);
      if (lambda != L) out.add(ViolationKind::PairIndex, {i, j, lambda});
    }
  }
  return std::move(out).finish();
}

VerificationReport verify_fr(const InstanceSpec& spec, const DesignMatrix& m) {
  require_family(spec, {Family::FR}, "verify_fr");
  require_shape(spec, m);
  const int n = spec.get("n");
  Collector out;
  check_range(m, 0, n - 1, out);
  if (!out.clean()) return std::move(out).finish();
  check_permutation_rows(m, n, out);
  if (!out.clean()) return std::move(out).finish();

  // owner[(a * n + b) * n + step] = row that first placed b `step` right of a.
  std::vector<int> owner(static_cast<std::size_t>(n) * n * n, -1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const int a = m.at(r, p);
        const int b = m.at(r, q);
        const int step = q - p;
        int& slot = owner[(static_cast<std::size_t>(a) * n + b) * n + step];
        if (slot >= 0) {
          out.add(ViolationKind::RepeatedStepPair, {slot, r, a, b, step});
        } else {
          slot = r;
        }
      }
    }
  }
  return std::move(out).finish();
}

VerificationReport verify_epa(const InstanceSpec& spec, const DesignMatrix& m) {
  require_family(spec, {Family::EPA}, "verify_epa");
  require_shape(spec, m);
  const int n = spec.get("n");
  const int d = spec.get("d");
  Collector out;
  check_range(m, 0, n - 1, out);
  if (!out.clean()) return std::move(out).finish();
  check_permutation_rows(m, n, out);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i + 1; j < m.rows(); ++j) {
      int dist = 0;
      for (int c = 0; c < n; ++c) dist += m.at(i, c) != m.at(j, c);
      if (dist != d) out.add(ViolationKind::Distance, {i, j, dist});
    }
  }
  return std::move(out).finish();
}

VerificationReport verify(const InstanceSpec& spec, const DesignMatrix& m) {
  switch (spec.family()) {
    case Family::PA: return verify_pa(spec, m);
    case Family::SymmW:
    case Family::SkewW: return verify_weighing(spec, m);
    case Family::BTD: return verify_btd(spec, m);
    case Family::FR: return verify_fr(spec, m);
    case Family::EPA: return verify_epa(spec, m);
  }
  throw SpecError("unknown family");
}

}  // namespace cdesign
