#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "k0s/pathalgebra.hpp"

namespace k0s::pathalg {

namespace {

bool has_prefix(const std::vector<std::size_t>& word, const std::vector<std::size_t>& prefix) {
  return prefix.size() <= word.size() && std::equal(prefix.begin(), prefix.end(), word.begin());
}

}  // namespace

bool AlgebraElement::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Scalar& s) { return s.is_zero(); });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (o.source != source || o.target != target || o.coefficients.size() != coefficients.size()) {
    throw AlgebraError("adding algebra elements with different endpoints");
  }
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (!o.coefficients[k].is_zero()) coefficients[k] += o.coefficients[k];
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  if (o.source != source || o.target != target || o.coefficients.size() != coefficients.size()) {
    throw AlgebraError("subtracting algebra elements with different endpoints");
  }
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    if (!o.coefficients[k].is_zero()) coefficients[k] -= o.coefficients[k];
  }
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Scalar& s) {
  for (auto& c : coefficients) {
    if (!c.is_zero()) c *= s;
  }
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& c : r.coefficients) {
    if (!c.is_zero()) c = -c;
  }
  return r;
}

std::shared_ptr<const Algebra> Algebra::load(const Presentation& p, LoadOptions options) {
  std::shared_ptr<Algebra> alg(new Algebra());
  alg->field_ = options.field;
  alg->presentation_ = p;
  alg->vertices_ = p.vertices;
  if (p.vertices.empty()) throw AlgebraError("algebra has no vertices");
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    if (!alg->vertex_index_.emplace(p.vertices[i], i).second) {
      throw AlgebraError("duplicate vertex '" + p.vertices[i] + "'");
    }
  }
  std::map<std::string, std::size_t> arrow_index;
  for (const auto& a : p.arrows) {
    const auto f = alg->vertex_index_.find(a.from);
    const auto t = alg->vertex_index_.find(a.to);
    if (f == alg->vertex_index_.end() || t == alg->vertex_index_.end()) {
      throw AlgebraError("arrow '" + a.name + "' references an undeclared vertex");
    }
    if (!arrow_index.emplace(a.name, alg->arrows_.size()).second) {
      throw AlgebraError("duplicate arrow '" + a.name + "'");
    }
    alg->arrows_.push_back(Arrow{a.name, f->second, t->second});
  }
  for (const auto& rel : p.relations) {
    if (rel.size() < 2) throw AlgebraError("relations must have length at least 2");
    std::vector<std::size_t> word;
    for (const auto& name : rel) {
      const auto it = arrow_index.find(name);
      if (it == arrow_index.end()) throw AlgebraError("relation references unknown arrow '" + name + "'");
      word.push_back(it->second);
    }
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
      if (alg->arrows_[word[k]].from != alg->arrows_[word[k + 1]].to) {
        throw AlgebraError("relation is not a composable path");
      }
    }
    alg->relations_.push_back(std::move(word));
  }

  // Breadth-first enumeration of paths avoiding every relation as a subword.
  // Extending on the left only creates new prefixes, so only those are tested.
  const std::size_t n = alg->vertices_.size();
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    alg->trivial_.push_back(alg->paths_.size());
    alg->paths_.push_back(Path{v, v, {}});
    queue.push_back(alg->paths_.size() - 1);
  }
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < alg->arrows_.size(); ++a) {
      if (alg->arrows_[a].from != alg->paths_[id].target) continue;
      std::vector<std::size_t> word;
      word.reserve(alg->paths_[id].word.size() + 1);
      word.push_back(a);
      word.insert(word.end(), alg->paths_[id].word.begin(), alg->paths_[id].word.end());
      const bool killed = std::any_of(alg->relations_.begin(), alg->relations_.end(),
                                      [&](const auto& r) { return has_prefix(word, r); });
      if (killed) continue;
      if (alg->paths_.size() >= options.path_bound) {
        throw AlgebraError("non-admissible presentation: more than " + std::to_string(options.path_bound) +
                           " nonzero paths");
      }
      Path np{alg->paths_[id].source, alg->arrows_[a].to, std::move(word)};
      alg->word_index_.emplace(np.word, alg->paths_.size());
      alg->paths_.push_back(std::move(np));
      queue.push_back(alg->paths_.size() - 1);
    }
  }

  alg->slots_.assign(n * n, {});
  alg->slot_pos_.resize(alg->paths_.size());
  for (std::size_t id = 0; id < alg->paths_.size(); ++id) {
    auto& s = alg->slots_[alg->paths_[id].source * n + alg->paths_[id].target];
    alg->slot_pos_[id] = s.size();
    s.push_back(id);
  }

  const std::size_t np = alg->paths_.size();
  if (np * np <= 4'000'000) {
    alg->product_table_.assign(np * np, -1);
    for (std::size_t a = 0; a < np; ++a) {
      for (std::size_t b = 0; b < np; ++b) {
        alg->product_table_[a * np + b] = -1;
        if (alg->paths_[b].target != alg->paths_[a].source) continue;
        if (alg->paths_[a].word.empty()) {
          alg->product_table_[a * np + b] = static_cast<std::int32_t>(b);
        } else if (alg->paths_[b].word.empty()) {
          alg->product_table_[a * np + b] = static_cast<std::int32_t>(a);
        } else {
          std::vector<std::size_t> w = alg->paths_[a].word;
          w.insert(w.end(), alg->paths_[b].word.begin(), alg->paths_[b].word.end());
          const auto it = alg->word_index_.find(w);
          if (it != alg->word_index_.end()) alg->product_table_[a * np + b] = static_cast<std::int32_t>(it->second);
        }
      }
    }
  }
  return alg;
}

std::size_t Algebra::vertex_index(const std::string& label) const {
  const auto it = vertex_index_.find(label);
  if (it == vertex_index_.end()) throw AlgebraError("unknown vertex '" + label + "'");
  return it->second;
}

std::span<const std::size_t> Algebra::slot(std::size_t i, std::size_t j) const {
  return slots_.at(i * vertices_.size() + j);
}

std::string Algebra::path_name(std::size_t id) const {
  const Path& p = path(id);
  if (p.word.empty()) return "e" + vertices_[p.source];
  std::string out;
  for (std::size_t k = 0; k < p.word.size(); ++k) {
    if (k) out += "*";
    out += arrows_[p.word[k]].name;
  }
  return out;
}

std::optional<std::size_t> Algebra::find_path(const std::vector<std::string>& word,
                                              std::optional<std::size_t> at) const {
  if (word.empty()) {
    if (!at) return std::nullopt;
    return trivial_.at(*at);
  }
  std::vector<std::size_t> ids;
  for (const auto& name : word) {
    const auto it = std::find_if(arrows_.begin(), arrows_.end(), [&](const Arrow& a) { return a.name == name; });
    if (it == arrows_.end()) throw AlgebraError("unknown arrow '" + name + "'");
    ids.push_back(static_cast<std::size_t>(it - arrows_.begin()));
  }
  for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
    if (arrows_[ids[k]].from != arrows_[ids[k + 1]].to) throw AlgebraError("path word is not composable");
  }
  const auto it = word_index_.find(ids);
  if (it == word_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Algebra::path_product(std::size_t a, std::size_t b) const {
  if (!product_table_.empty()) {
    const auto r = product_table_[a * paths_.size() + b];
    if (r < 0) return std::nullopt;
    return static_cast<std::size_t>(r);
  }
  if (paths_[b].target != paths_[a].source) return std::nullopt;
  if (paths_[a].word.empty()) return b;
  if (paths_[b].word.empty()) return a;
  std::vector<std::size_t> w = paths_[a].word;
  w.insert(w.end(), paths_[b].word.begin(), paths_[b].word.end());
  const auto it = word_index_.find(w);
  if (it == word_index_.end()) return std::nullopt;
  return it->second;
}

AlgebraElement Algebra::zero(std::size_t source, std::size_t target) const {
  return AlgebraElement{source, target, std::vector<Scalar>(slot(source, target).size(), Scalar(0, field_))};
}

AlgebraElement Algebra::unit(std::size_t path_id, const Scalar& coeff) const {
  const Path& p = path(path_id);
  AlgebraElement e = zero(p.source, p.target);
  e.coefficients[slot_pos_[path_id]] = coeff;
  return e;
}

AlgebraElement Algebra::compose(const AlgebraElement& a, const AlgebraElement& b) const {
  if (b.target != a.source) {
    throw AlgebraError("cannot compose: path ending at " + vertices_[b.target] + " followed by path starting at " +
                       vertices_[a.source]);
  }
  AlgebraElement out = zero(b.source, a.target);
  const auto sa = slot(a.source, a.target);
  const auto sb = slot(b.source, b.target);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (a.coefficients[i].is_zero()) continue;
    for (std::size_t j = 0; j < sb.size(); ++j) {
      if (b.coefficients[j].is_zero()) continue;
      if (const auto prod = path_product(sa[i], sb[j])) {
        out.coefficients[slot_pos_[*prod]] += a.coefficients[i] * b.coefficients[j];
      }
    }
  }
  return out;
}

Scalar Algebra::identity_coefficient(const AlgebraElement& a) const {
  if (a.source != a.target) return Scalar(0, field_);
  return a.coefficients.at(0);  // trivial path leads its slot
}

AlgebraElement Algebra::local_inverse(const AlgebraElement& a) const {
  if (a.source != a.target) throw AlgebraError("local_inverse of a non-endomorphism");
  const Scalar c = identity_coefficient(a);
  if (c.is_zero()) throw AlgebraError("element is not invertible (radical)");
  // a = c (e - r) with r radical and nilpotent, so a^{-1} = c^{-1} sum_k r^k.
  const Scalar cinv = c.inverse();
  AlgebraElement r = -(a * cinv);
  r.coefficients[0] = Scalar(0, field_);
  AlgebraElement sum = identity(a.source);
  AlgebraElement power = identity(a.source);
  for (;;) {
    power = compose(power, r);
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * cinv;
}

std::string Algebra::format(const AlgebraElement& a) const {
  std::ostringstream os;
  const auto s = slot(a.source, a.target);
  bool first = true;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (a.coefficients[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (!a.coefficients[k].is_one()) os << a.coefficients[k].str() << " ";
    os << path_name(s[k]);
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace k0s::pathalg
