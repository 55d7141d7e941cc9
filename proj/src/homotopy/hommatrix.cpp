#include <algorithm>

#include "k0s/homotopy.hpp"

namespace k0s::homotopy {

HomMatrix HomMatrix::zero(const Algebra& alg, std::vector<std::size_t> source, std::vector<std::size_t> target) {
  HomMatrix m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.entries_.reserve(m.source_.size() * m.target_.size());
  for (std::size_t t = 0; t < m.target_.size(); ++t) {
    for (std::size_t s = 0; s < m.source_.size(); ++s) m.entries_.push_back(alg.zero(m.target_[t], m.source_[s]));
  }
  return m;
}

HomMatrix HomMatrix::identity(const Algebra& alg, const std::vector<std::size_t>& summands) {
  HomMatrix m = zero(alg, summands, summands);
  for (std::size_t i = 0; i < summands.size(); ++i) m.at(i, i) = alg.identity(summands[i]);
  return m;
}

HomMatrix HomMatrix::from_entries(std::vector<std::size_t> source, std::vector<std::size_t> target,
                                  std::vector<AlgebraElement> entries) {
  if (entries.size() != source.size() * target.size()) throw HomotopyError("entry count does not match shape");
  for (std::size_t t = 0; t < target.size(); ++t) {
    for (std::size_t s = 0; s < source.size(); ++s) {
      const auto& e = entries[t * source.size() + s];
      if (e.source != target[t] || e.target != source[s]) {
        throw HomotopyError("matrix entry does not map between the declared summands");
      }
    }
  }
  HomMatrix m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.entries_ = std::move(entries);
  return m;
}

bool HomMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const AlgebraElement& e) { return e.is_zero(); });
}

HomMatrix& HomMatrix::operator+=(const HomMatrix& o) {
  if (o.source_ != source_ || o.target_ != target_) throw HomotopyError("adding maps of different shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

HomMatrix& HomMatrix::operator-=(const HomMatrix& o) {
  if (o.source_ != source_ || o.target_ != target_) throw HomotopyError("subtracting maps of different shapes");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

HomMatrix& HomMatrix::operator*=(const Scalar& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

HomMatrix HomMatrix::operator-() const {
  HomMatrix r = *this;
  for (auto& e : r.entries_) e = -e;
  return r;
}

HomMatrix compose(const Algebra& alg, const HomMatrix& g, const HomMatrix& f) {
  if (g.source() != f.target()) throw HomotopyError("composing maps with mismatched middle object");
  HomMatrix out = HomMatrix::zero(alg, f.source(), g.target());
  for (std::size_t c = 0; c < g.rows(); ++c) {
    for (std::size_t b = 0; b < g.cols(); ++b) {
      const AlgebraElement& gcb = g.at(c, b);
      if (gcb.is_zero()) continue;
      for (std::size_t a = 0; a < f.cols(); ++a) {
        const AlgebraElement& fba = f.at(b, a);
        if (fba.is_zero()) continue;
        out.at(c, a) += alg.compose_maps(gcb, fba);
      }
    }
  }
  return out;
}

HomMatrix block_diagonal(const Algebra& alg, const HomMatrix& a, const HomMatrix& b) {
  std::vector<std::size_t> src = a.source();
  src.insert(src.end(), b.source().begin(), b.source().end());
  std::vector<std::size_t> tgt = a.target();
  tgt.insert(tgt.end(), b.target().begin(), b.target().end());
  HomMatrix out = HomMatrix::zero(alg, src, tgt);
  for (std::size_t t = 0; t < a.rows(); ++t) {
    for (std::size_t s = 0; s < a.cols(); ++s) out.at(t, s) = a.at(t, s);
  }
  for (std::size_t t = 0; t < b.rows(); ++t) {
    for (std::size_t s = 0; s < b.cols(); ++s) out.at(a.rows() + t, a.cols() + s) = b.at(t, s);
  }
  return out;
}

HomMatrix submatrix(const HomMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> src, tgt;
  for (auto c : cols) src.push_back(m.source().at(c));
  for (auto r : rows) tgt.push_back(m.target().at(r));
  std::vector<AlgebraElement> entries;
  entries.reserve(rows.size() * cols.size());
  for (auto r : rows) {
    for (auto c : cols) entries.push_back(m.at(r, c));
  }
  return HomMatrix::from_entries(std::move(src), std::move(tgt), std::move(entries));
}

}  // namespace k0s::homotopy
