#include <algorithm>
#include <sstream>

#include "k0s/grothendieck.hpp"

namespace k0s::grothendieck {

K0SpElement K0SpElement::basis(const std::string& label, long coeff) {
  K0SpElement e;
  e.add(label, coeff);
  return e;
}

long K0SpElement::operator[](const std::string& label) const {
  const auto it = coeffs_.find(label);
  return it == coeffs_.end() ? 0 : it->second;
}

K0SpElement& K0SpElement::add(const std::string& label, long coeff) {
  if (coeff == 0) return *this;
  const long v = (coeffs_[label] += coeff);
  if (v == 0) coeffs_.erase(label);
  return *this;
}

K0SpElement& K0SpElement::operator+=(const K0SpElement& o) {
  for (const auto& [l, c] : o.coeffs_) add(l, c);
  return *this;
}

K0SpElement& K0SpElement::operator-=(const K0SpElement& o) {
  for (const auto& [l, c] : o.coeffs_) add(l, -c);
  return *this;
}

K0SpElement K0SpElement::operator-() const { return -1 * *this; }

K0SpElement operator*(long c, const K0SpElement& a) {
  K0SpElement out;
  for (const auto& [l, v] : a.coeffs_) out.add(l, c * v);
  return out;
}

std::string K0SpElement::str(const std::vector<std::string>& order) const {
  if (coeffs_.empty()) return "0";
  std::vector<std::string> labels;
  for (const auto& l : order) {
    if (coeffs_.count(l)) labels.push_back(l);
  }
  for (const auto& [l, c] : coeffs_) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const long c = coeffs_.at(labels[i]);
    if (i) os << ", ";
    os << labels[i] << ": " << (c > 0 ? "+" : "") << c;
  }
  return os.str();
}

std::string GroupInvariants::str() const {
  std::ostringstream os;
  os << "Z^" << rank;
  for (const auto& t : torsion) os << " + Z/" << t.get_str();
  return os.str();
}

GroupInvariants group_invariants(const AbelianGroupPresentation& p) {
  if (p.relations.rows() > 0 && p.relations.cols() != p.generators.size()) {
    throw GroupError("relation width does not match the generator count");
  }
  GroupInvariants out;
  if (p.relations.rows() == 0) {
    out.rank = p.generators.size();
    return out;
  }
  const auto snf = exactmath::smith_normal_form(p.relations);
  out.rank = p.generators.size() - snf.diagonal.size();
  for (const auto& d : snf.diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  return out;
}

GroupInvariants quotient_group(const std::vector<std::string>& labels, const std::vector<K0SpElement>& generators) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  AbelianGroupPresentation p{labels, IntMatrix(generators.size(), labels.size())};
  for (std::size_t r = 0; r < generators.size(); ++r) {
    for (const auto& [l, c] : generators[r].coefficients()) {
      const auto it = index.find(l);
      if (it == index.end()) throw GroupError("unknown label '" + l + "' in subgroup generator");
      p.relations(r, it->second) = c;
    }
  }
  return group_invariants(p);
}

}  // namespace k0s::grothendieck
