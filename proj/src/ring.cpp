#include "tauforge/ring.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tauforge {

std::string_view to_string(AssocKind kind) {
  switch (kind) {
    case AssocKind::Associate: return "associate";
    case AssocKind::StrongAssociate: return "strong-associate";
    case AssocKind::VeryStrongAssociate: return "very-strong-associate";
  }
  return "?";
}

RingAxiomError::RingAxiomError(std::string law, std::size_t a_, std::size_t b_, std::size_t c_)
    : std::runtime_error("ring axiom violated: " + law + " at (" + std::to_string(a_) + "," +
                         std::to_string(b_) + "," + std::to_string(c_) + ")"),
      a(a_), b(b_), c(c_), law_(std::move(law)) {}

namespace {

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw SpecError("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

FiniteRing FiniteRing::cyclic(std::size_t n) {
  auto r = product({n});
  return r;
}

FiniteRing FiniteRing::product(std::vector<std::size_t> orders) {
  if (orders.empty()) throw SpecError("product ring needs at least one factor");
  std::size_t n = 1;
  for (auto m : orders) {
    if (m < 2) throw SpecError("cyclic order must be >= 2, got " + std::to_string(m));
    n *= m;
    if (n > 65535) throw SpecError("carrier too large");
  }
  FiniteRing r;
  r.n_ = n;
  r.radices_ = orders;
  std::string label;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) label += "x";
    label += "Z" + std::to_string(orders[i]);
  }
  r.label_ = label;

  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      d[i] = x % orders[i];
      x /= orders[i];
    }
    return d;
  };
  auto compose = [&](std::vector<std::size_t> const& d) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) x = x * orders[i] + d[i];
    return x;
  };
  std::vector<std::vector<std::size_t>> dig(n);
  for (std::size_t x = 0; x < n; ++x) dig[x] = digits(x);
  r.add_.resize(n * n);
  r.mul_.resize(n * n);
  std::vector<std::size_t> s(orders.size()), p(orders.size());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < orders.size(); ++i) {
        s[i] = (dig[a][i] + dig[b][i]) % orders[i];
        p[i] = (dig[a][i] * dig[b][i]) % orders[i];
      }
      r.add_[a * n + b] = static_cast<std::uint16_t>(compose(s));
      r.mul_[a * n + b] = static_cast<std::uint16_t>(compose(p));
    }
  }
  r.zero_ = elem(0);
  r.one_ = elem(compose(std::vector<std::size_t>(orders.size(), 1)));
  r.finish(n <= kAxiomCheckBound);
  return r;
}

FiniteRing FiniteRing::from_tables(std::size_t n, std::size_t zero, std::size_t one,
                                   std::vector<std::uint16_t> add,
                                   std::vector<std::uint16_t> mul, std::string label) {
  if (n < 2) throw SpecError("ring must have at least 2 elements");
  if (n > kAxiomCheckBound) {
    throw SpecError("table rings are limited to " + std::to_string(kAxiomCheckBound) +
                    " elements");
  }
  if (add.size() != n * n || mul.size() != n * n) throw SpecError("table size mismatch");
  if (zero >= n || one >= n) throw SpecError("identity index out of range");
  for (auto v : add)
    if (v >= n) throw SpecError("addition table entry out of range");
  for (auto v : mul)
    if (v >= n) throw SpecError("multiplication table entry out of range");
  if (zero == one) throw SpecError("zero and one must differ");
  FiniteRing r;
  r.n_ = n;
  r.zero_ = elem(zero);
  r.one_ = elem(one);
  r.add_ = std::move(add);
  r.mul_ = std::move(mul);
  r.label_ = std::move(label);
  r.finish(true);
  return r;
}

void FiniteRing::check_axioms() const {
  auto A = [&](std::size_t a, std::size_t b) { return std::size_t{add_[a * n_ + b]}; };
  auto M = [&](std::size_t a, std::size_t b) { return std::size_t{mul_[a * n_ + b]}; };
  std::size_t const z = idx(zero_), o = idx(one_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (A(a, z) != a) throw RingAxiomError("additive identity", a, z, a);
    if (M(a, o) != a) throw RingAxiomError("multiplicative identity", a, o, a);
    bool has_neg = false;
    for (std::size_t b = 0; b < n_; ++b) {
      if (A(a, b) != A(b, a)) throw RingAxiomError("additive commutativity", a, b, 0);
      if (M(a, b) != M(b, a)) throw RingAxiomError("multiplicative commutativity", a, b, 0);
      has_neg = has_neg || A(a, b) == z;
    }
    if (!has_neg) throw RingAxiomError("additive inverse", a, 0, 0);
  }
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c))) throw RingAxiomError("additive associativity", a, b, c);
        if (M(M(a, b), c) != M(a, M(b, c)))
          throw RingAxiomError("multiplicative associativity", a, b, c);
        if (M(a, A(b, c)) != A(M(a, b), M(a, c))) throw RingAxiomError("distributivity", a, b, c);
      }
    }
  }
}

void FiniteRing::finish(bool verify) {
  if (verify) check_axioms();
  std::size_t const n = n_;
  neg_.assign(n, zero_);
  inverse_.assign(n, std::nullopt);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (add_[a * n + b] == idx(zero_)) neg_[a] = elem(b);
      if (mul_[a * n + b] == idx(one_)) inverse_[a] = elem(b);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (inverse_[a]) {
      units_.push_back(elem(a));
    } else {
      nonunits_.push_back(elem(a));
      if (elem(a) != zero_) rsharp_.push_back(elem(a));
    }
  }

  divides_.assign(n * n, 0);
  std::size_t const words = (n + 63) / 64;
  ideal_bits_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t const a = mul_[r * n + b];
      divides_[b * n + a] = 1;
      ideal_bits_[b][a / 64] |= std::uint64_t{1} << (a % 64);
    }
  }

  assoc_.assign(n * n, 0);
  strong_.assign(n * n, 0);
  very_strong_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      bool const assoc = ideal_bits_[a] == ideal_bits_[b];
      assoc_[a * n + b] = assoc;
      strong_[a * n + b] = unit_quotient(elem(a), elem(b)).has_value();
      bool vs = false;
      if (assoc) {
        if (elem(a) == zero_ && elem(b) == zero_) {
          vs = true;
        } else {
          vs = true;
          for (std::size_t r = 0; r < n && vs; ++r) {
            if (mul_[r * n + b] == a && !inverse_[r]) vs = false;
          }
        }
      }
      very_strong_[a * n + b] = vs;
    }
  }
  assoc_class_.resize(n);
  strong_class_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      if (assoc_[a * n + b]) {
        assoc_class_[a] = elem(b);
        break;
      }
    }
    for (std::size_t b = 0; b <= a; ++b) {
      if (strong_[a * n + b]) {
        strong_class_[a] = elem(b);
        break;
      }
    }
  }

  // Prefer an idempotent pair (x, x), smallest principal ideal first, ties to
  // the highest index; this picks (1,0,...) in products.
  presimplifiable_witness_.reset();
  std::size_t best_ideal = n + 1;
  for (std::size_t x = 0; x < n; ++x) {
    if (elem(x) == zero_ || inverse_[x] || mul_[x * n + x] != x) continue;
    std::size_t const size = principal_ideal(elem(x)).size();
    if (size <= best_ideal) {
      best_ideal = size;
      presimplifiable_witness_ = std::pair{elem(x), elem(x)};
    }
  }
  for (std::size_t x = 0; x < n && !presimplifiable_witness_; ++x) {
    if (elem(x) == zero_) continue;
    for (std::size_t y = 0; y < n; ++y) {
      if (!inverse_[y] && mul_[x * n + y] == x) {
        presimplifiable_witness_ = std::pair{elem(x), elem(y)};
        break;
      }
    }
  }
  strongly_associate_ = true;
  very_strongly_associate_ = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (assoc_[a * n + b] && !strong_[a * n + b]) strongly_associate_ = false;
      if (assoc_[a * n + b] && !very_strong_[a * n + b]) very_strongly_associate_ = false;
    }
  }

  power_index_.assign(n, 1);
  power_period_.assign(n, 1);
  std::vector<std::size_t> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    std::size_t x = a;
    for (std::size_t e = 1;; ++e) {
      if (seen[x]) {
        power_index_[a] = seen[x];
        power_period_[a] = e - seen[x];
        break;
      }
      seen[x] = e;
      x = mul_[x * n + a];
    }
  }
}

std::vector<ElementId> FiniteRing::elements() const {
  std::vector<ElementId> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = elem(i);
  return out;
}

std::vector<ElementId> FiniteRing::principal_ideal(ElementId a) const {
  std::vector<ElementId> out;
  for (std::size_t x = 0; x < n_; ++x)
    if (ideal_bits_[idx(a)][x / 64] >> (x % 64) & 1) out.push_back(elem(x));
  return out;
}

std::vector<ElementId> FiniteRing::ideal_generated_by(std::vector<ElementId> const& gens) const {
  std::vector<char> in(n_, 0);
  std::vector<std::size_t> members;
  auto insert = [&](std::size_t x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  insert(idx(zero_));
  for (auto g : gens)
    for (std::size_t r = 0; r < n_; ++r) insert(mul_[r * n_ + idx(g)]);
  // Additive closure; finite, so closure under + alone yields a subgroup.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) insert(add_[members[i] * n_ + members[j]]);
  }
  std::vector<ElementId> out;
  for (std::size_t x = 0; x < n_; ++x)
    if (in[x]) out.push_back(elem(x));
  return out;
}

bool FiniteRing::are_related(ElementId a, ElementId b, AssocKind kind) const noexcept {
  std::size_t const k = idx(a) * n_ + idx(b);
  switch (kind) {
    case AssocKind::Associate: return assoc_[k];
    case AssocKind::StrongAssociate: return strong_[k];
    case AssocKind::VeryStrongAssociate: return very_strong_[k];
  }
  return false;
}

ElementId FiniteRing::class_of(ElementId a, AssocKind kind) const {
  switch (kind) {
    case AssocKind::Associate: return assoc_class_[idx(a)];
    case AssocKind::StrongAssociate: return strong_class_[idx(a)];
    case AssocKind::VeryStrongAssociate: break;
  }
  throw std::logic_error("very strong association is not an equivalence relation");
}

std::optional<ElementId> FiniteRing::unit_quotient(ElementId target, ElementId value) const noexcept {
  for (auto u : units_)
    if (mul(u, value) == target) return u;
  return std::nullopt;
}

ElementId FiniteRing::power(ElementId a, std::size_t e) const noexcept {
  ElementId x = one_;
  for (std::size_t i = 0; i < e; ++i) x = mul(x, a);
  return x;
}

std::string FiniteRing::display(ElementId a) const {
  if (radices_.size() <= 1) return std::to_string(idx(a));
  std::vector<std::size_t> d(radices_.size());
  std::size_t x = idx(a);
  for (std::size_t i = radices_.size(); i-- > 0;) {
    d[i] = x % radices_[i];
    x /= radices_[i];
  }
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

FiniteRing read_table_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open table file '" + path + "'");
  long long n = 0, zero = 0, one = 0;
  if (!(in >> n >> zero >> one)) throw SpecError("table file header must be 'n zero one'");
  if (n < 2) throw SpecError("ring must have at least 2 elements");
  if (static_cast<std::size_t>(n) > FiniteRing::kAxiomCheckBound)
    throw SpecError("table rings are limited to 64 elements");
  auto read = [&](std::vector<std::uint16_t>& t) {
    t.resize(static_cast<std::size_t>(n * n));
    for (auto& v : t) {
      long long x;
      if (!(in >> x)) throw SpecError("table file truncated");
      if (x < 0 || x >= n) throw SpecError("table entry out of range");
      v = static_cast<std::uint16_t>(x);
    }
  };
  std::vector<std::uint16_t> add, mul;
  read(add);
  read(mul);
  if (zero < 0 || one < 0) throw SpecError("identity index out of range");
  return FiniteRing::from_tables(static_cast<std::size_t>(n), static_cast<std::size_t>(zero),
                                 static_cast<std::size_t>(one), std::move(add), std::move(mul),
                                 "tables:" + path);
}

FiniteRing parse_ring_spec(std::string_view spec) {
  spec = trim(spec);
  if (spec.starts_with("tables:")) return read_table_file(std::string(spec.substr(7)));
  std::vector<std::size_t> orders;
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::string_view rest = s;
  while (!rest.empty()) {
    if (rest.front() != 'Z') throw SpecError("ring spec must look like Z<n> or Z<n>xZ<m>");
    rest.remove_prefix(1);
    auto end = rest.find('x');
    auto num = rest.substr(0, end);
    orders.push_back(parse_size(num, "cyclic order"));
    if (end == std::string_view::npos) break;
    rest.remove_prefix(end + 1);
    if (rest.empty()) throw SpecError("dangling 'x' in ring spec");
  }
  if (orders.empty()) throw SpecError("empty ring spec");
  return FiniteRing::product(std::move(orders));
}

ElementId parse_element(FiniteRing const& ring, std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')') throw SpecError("unterminated tuple '" + std::string(text) + "'");
    auto const& radices = ring.components();
    if (radices.size() < 2) throw SpecError("tuple literal on a non-product ring");
    std::vector<std::size_t> d;
    std::string_view body = text.substr(1, text.size() - 2);
    while (true) {
      auto comma = body.find(',');
      d.push_back(parse_size(trim(body.substr(0, comma)), "tuple component"));
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    if (d.size() != radices.size()) throw SpecError("tuple arity does not match ring");
    std::size_t x = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] >= radices[i]) throw SpecError("tuple component out of range");
      x = x * radices[i] + d[i];
    }
    return elem(x);
  }
  auto v = parse_size(text, "element");
  if (v >= ring.size()) throw SpecError("element " + std::to_string(v) + " outside carrier");
  return elem(v);
}

}  // namespace tauforge
