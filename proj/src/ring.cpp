#include "gradering/ring.hpp"

#include <algorithm>
#include <cassert>

#include "gradering/linalg.hpp"

namespace gradering {

struct Ring::Data {
  u64 modulus = 0;
  std::vector<std::string> basis_names;
  std::vector<u64> dense; // dim^3, index ((i*dim)+j)*dim+k
  std::vector<std::vector<std::pair<u32, u64>>> sparse; // dim^2 product rows
  std::optional<std::vector<u64>> unity;

  std::size_t dim() const { return basis_names.size(); }
  u64 at(std::size_t i, std::size_t j, std::size_t k) const {
    const std::size_t d = dim();
    return dense[(i * d + j) * d + k];
  }
};

Ring Ring::make(const RingSpec& spec) {
  if (spec.modulus < 2)
    throw SpecError("modulus", "must be at least 2");
  if (spec.basis_names.empty())
    throw SpecError("basis_names", "ring dimension must be at least 1");
  const std::size_t d = spec.basis_names.size();
  for (std::size_t i = 0; i < d; ++i) {
    if (spec.basis_names[i].empty())
      throw SpecError("basis_names[" + std::to_string(i) + "]",
                      "empty name");
    for (std::size_t j = i + 1; j < d; ++j)
      if (spec.basis_names[i] == spec.basis_names[j])
        throw SpecError("basis_names[" + std::to_string(j) + "]",
                        "duplicate name '" + spec.basis_names[j] + "'");
  }

  auto data = std::make_shared<Data>();
  data->modulus = spec.modulus;
  data->basis_names = spec.basis_names;
  data->dense.assign(d * d * d, 0);

  std::vector<bool> seen(d * d * d, false);
  for (std::size_t t = 0; t < spec.structure_constants.size(); ++t) {
    const auto& tr = spec.structure_constants[t];
    const std::string path = "structure_constants[" + std::to_string(t) + "]";
    if (tr.i >= d || tr.j >= d || tr.k >= d)
      throw SpecError(path, "basis index out of range");
    if (tr.c >= spec.modulus)
      throw SpecError(path, "coefficient " + std::to_string(tr.c) +
                                " not reduced mod " +
                                std::to_string(spec.modulus));
    const std::size_t idx = (tr.i * d + tr.j) * d + tr.k;
    if (seen[idx])
      throw SpecError(path, "duplicate (i, j, k) triple");
    seen[idx] = true;
    data->dense[idx] = tr.c;
  }

  data->sparse.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto& row = data->sparse[i * d + j];
      for (std::size_t k = 0; k < d; ++k) {
        u64 c = data->dense[(i * d + j) * d + k];
        if (c != 0) row.emplace_back(static_cast<u32>(k), c);
      }
    }

  if (spec.unity) {
    if (spec.unity->size() != d)
      throw SpecError("unity", "coordinate count does not match dimension");
    for (std::size_t i = 0; i < d; ++i)
      if ((*spec.unity)[i] >= spec.modulus)
        throw SpecError("unity[" + std::to_string(i) + "]",
                        "coordinate not reduced mod " +
                            std::to_string(spec.modulus));
    data->unity = *spec.unity;
  }

  return Ring(std::move(data));
}

std::size_t Ring::dim() const { return data_->dim(); }
u64 Ring::modulus() const { return data_->modulus; }
const std::vector<std::string>& Ring::basis_names() const {
  return data_->basis_names;
}
const std::string& Ring::basis_name(std::size_t i) const {
  return data_->basis_names[i];
}

u64 Ring::sc(std::size_t i, std::size_t j, std::size_t k) const {
  return data_->at(i, j, k);
}

std::span<const std::pair<u32, u64>> Ring::product_terms(std::size_t i,
                                                         std::size_t j) const {
  return data_->sparse[i * dim() + j];
}

Element Ring::zero() const {
  return Element(*this, std::vector<u64>(dim(), 0));
}

Element Ring::basis_element(std::size_t i) const {
  std::vector<u64> c(dim(), 0);
  c[i] = 1;
  return Element(*this, std::move(c));
}

Element Ring::element(const std::vector<i64>& coords) const {
  if (coords.size() != dim())
    throw PreconditionError("element: coordinate count does not match ring dimension");
  std::vector<u64> c(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    c[i] = reduce_mod(coords[i], modulus());
  return Element(*this, std::move(c));
}

Element Ring::element_u(std::vector<u64> coords) const {
  if (coords.size() != dim())
    throw PreconditionError("element: coordinate count does not match ring dimension");
  for (auto& x : coords) x %= modulus();
  return Element(*this, std::move(coords));
}

std::optional<Element> Ring::unity() const {
  if (!data_->unity) return std::nullopt;
  return Element(*this, *data_->unity);
}

RingSpec Ring::spec() const {
  RingSpec s;
  s.modulus = modulus();
  s.basis_names = basis_names();
  const std::size_t d = dim();
  for (u32 i = 0; i < d; ++i)
    for (u32 j = 0; j < d; ++j)
      for (u32 k = 0; k < d; ++k) {
        u64 c = sc(i, j, k);
        if (c != 0) s.structure_constants.push_back({i, j, k, c});
      }
  s.unity = data_->unity;
  return s;
}

Element::Element(Ring ring, std::vector<u64> coords)
    : ring_(std::move(ring)), coords_(std::move(coords)) {
  assert(coords_.size() == ring_.dim());
}

bool Element::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](u64 c) { return c == 0; });
}

void require_same_ring(const Element& a, const Element& b) {
  if (!a.ring().same(b.ring()))
    throw PreconditionError("elements belong to different ambient rings");
}

void require_same_ring(const Ring& a, const Ring& b, const char* op) {
  if (!a.same(b))
    throw PreconditionError(std::string(op) +
                            ": operands belong to different ambient rings");
}

void require_prime_modulus(const Ring& r, const char* op) {
  if (!is_prime(r.modulus()))
    throw UnsupportedModulusError(
        std::string(op) + ": modulus " + std::to_string(r.modulus()) +
        " is composite; this solver path needs a prime modulus");
}

Element Element::operator+(const Element& o) const {
  require_same_ring(*this, o);
  const u64 m = ring_.modulus();
  std::vector<u64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = (coords_[i] + o.coords_[i]) % m;
  return Element(ring_, std::move(c));
}

Element Element::operator-(const Element& o) const {
  require_same_ring(*this, o);
  const u64 m = ring_.modulus();
  std::vector<u64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = (coords_[i] + m - o.coords_[i]) % m;
  return Element(ring_, std::move(c));
}

Element Element::operator-() const {
  const u64 m = ring_.modulus();
  std::vector<u64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = (m - coords_[i]) % m;
  return Element(ring_, std::move(c));
}

Element Element::operator*(const Element& o) const {
  require_same_ring(*this, o);
  const u64 m = ring_.modulus();
  const std::size_t d = coords_.size();
  std::vector<u64> c(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (coords_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (o.coords_[j] == 0) continue;
      const u64 xy = (coords_[i] * o.coords_[j]) % m;
      for (auto [k, coeff] : ring_.product_terms(i, j))
        c[k] = (c[k] + xy * coeff) % m;
    }
  }
  return Element(ring_, std::move(c));
}

Element Element::scaled(i64 s) const {
  const u64 m = ring_.modulus();
  const u64 su = reduce_mod(s, m);
  std::vector<u64> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (coords_[i] * su) % m;
  return Element(ring_, std::move(c));
}

bool Element::operator==(const Element& o) const {
  return ring_.same(o.ring_) && coords_ == o.coords_;
}

std::string Element::str() const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    if (coords_[i] != 1) out += std::to_string(coords_[i]) + "*";
    out += ring_.basis_name(i);
  }
  return out.empty() ? "0" : out;
}

Verdict validate_ring(const Ring& r) {
  const std::size_t d = r.dim();
  const u64 m = r.modulus();
  std::vector<u64> left(d), right(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        std::fill(left.begin(), left.end(), 0);
        std::fill(right.begin(), right.end(), 0);
        // (e_i e_j) e_k
        for (auto [l, c] : r.product_terms(i, j))
          for (auto [t, c2] : r.product_terms(l, k))
            left[t] = (left[t] + c * c2) % m;
        // e_i (e_j e_k)
        for (auto [l, c] : r.product_terms(j, k))
          for (auto [t, c2] : r.product_terms(i, l))
            right[t] = (right[t] + c * c2) % m;
        if (left != right) {
          Verdict v;
          v.pass = false;
          v.witness = {static_cast<i64>(i), static_cast<i64>(j),
                       static_cast<i64>(k)};
          v.detail = "associativity fails at basis triple (" +
                     r.basis_name(i) + ", " + r.basis_name(j) + ", " +
                     r.basis_name(k) + ")";
          return v;
        }
      }
  if (auto one = r.unity()) {
    for (std::size_t i = 0; i < d; ++i) {
      const Element e = r.basis_element(i);
      if (!(*one * e == e) || !(e * *one == e)) {
        Verdict v;
        v.pass = false;
        v.witness = {static_cast<i64>(i)};
        v.detail = "declared unity does not act as identity on " +
                   r.basis_name(i);
        return v;
      }
    }
  }
  Verdict v;
  v.detail = "associative on all " + std::to_string(d * d * d) +
             " basis triples";
  return v;
}

Element commutator(const Element& x, const Element& y) { return x * y - y * x; }
Element jordan(const Element& x, const Element& y) { return x * y + y * x; }

Verdict is_commutative(const Ring& r) {
  const std::size_t d = r.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const Element a = r.basis_element(i), b = r.basis_element(j);
      if (!(a * b == b * a)) {
        Verdict v;
        v.pass = false;
        v.witness = {static_cast<i64>(i), static_cast<i64>(j)};
        v.detail = "basis pair (" + r.basis_name(i) + ", " + r.basis_name(j) +
                   ") does not commute";
        return v;
      }
    }
  Verdict v;
  v.detail = "all basis pairs commute";
  return v;
}

namespace {

std::vector<Element> rows_to_elements(const Ring& r,
                                      const std::vector<linalg::Row>& rows) {
  linalg::Rref rref(r.modulus(), r.dim());
  for (const auto& row : rows) rref.add(row);
  std::vector<Element> out;
  out.reserve(rref.basis().size());
  for (const auto& row : rref.basis()) out.push_back(r.element_u(row));
  return out;
}

} // namespace

std::vector<Element> center(const Ring& r) {
  require_prime_modulus(r, "center");
  const std::size_t d = r.dim();
  const u64 m = r.modulus();
  // [z, e_j]_k = sum_i z_i (c[i][j][k] - c[j][i][k]) = 0 for all j, k.
  std::vector<linalg::Row> eqs;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      linalg::Row row(d, 0);
      bool nonzero = false;
      for (std::size_t i = 0; i < d; ++i) {
        row[i] = (r.sc(i, j, k) + m - r.sc(j, i, k)) % m;
        nonzero |= row[i] != 0;
      }
      if (nonzero) eqs.push_back(std::move(row));
    }
  return rows_to_elements(r, linalg::null_space(m, eqs, d));
}

std::vector<Element> centralizer(std::span<const Element> set, const Ring& r) {
  require_prime_modulus(r, "centralizer");
  const std::size_t d = r.dim();
  const u64 m = r.modulus();
  std::vector<linalg::Row> eqs;
  for (const Element& s : set) {
    if (!s.ring().same(r))
      throw PreconditionError("centralizer: element from a different ring");
    // [z, s]_k = sum_i z_i sum_j s_j (c[i][j][k] - c[j][i][k]).
    for (std::size_t k = 0; k < d; ++k) {
      linalg::Row row(d, 0);
      bool nonzero = false;
      for (std::size_t i = 0; i < d; ++i) {
        u64 acc = 0;
        for (std::size_t j = 0; j < d; ++j) {
          if (s.coord(j) == 0) continue;
          acc = (acc + s.coord(j) * ((r.sc(i, j, k) + m - r.sc(j, i, k)) % m)) % m;
        }
        row[i] = acc;
        nonzero |= acc != 0;
      }
      if (nonzero) eqs.push_back(std::move(row));
    }
  }
  return rows_to_elements(r, linalg::null_space(m, eqs, d));
}

} // namespace gradering
