#include "camel_lab/phase_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "camel_lab/errors.hpp"
#include "camel_lab/linear_ops.hpp"
#include "camel_lab/spectral.hpp"

namespace camel {
namespace {

void require_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite entry");
  }
}

}  // namespace

PhaseVector::PhaseVector() : order_(0), a_(1, 0.0), b_(1, 0.0) {}

PhaseVector::PhaseVector(int order, std::vector<double> a, std::vector<double> b)
    : order_(order), a_(std::move(a)), b_(std::move(b)) {
  if (order < 0) throw ValidationError("PhaseVector: negative truncation order");
  const auto expected = static_cast<std::size_t>(2 * order + 1);
  if (a_.size() != expected || b_.size() != expected) {
    throw ValidationError("PhaseVector: coefficient arrays must have 2n+1 entries");
  }
  require_finite(a_, "PhaseVector");
  require_finite(b_, "PhaseVector");
}

PhaseVector PhaseVector::zero(int order) {
  if (order < 0) throw ValidationError("PhaseVector: negative truncation order");
  const auto len = static_cast<std::size_t>(2 * order + 1);
  return PhaseVector(order, std::vector<double>(len, 0.0), std::vector<double>(len, 0.0));
}

PhaseVector PhaseVector::basis(int order, ModeIndex l, bool plus) {
  PhaseVector v = zero(order);
  auto s = v.slot(l);
  (plus ? v.a_ : v.b_)[s] = 1.0;
  return v;
}

PhaseVector PhaseVector::from_flat(int order, std::span<const double> flat) {
  const auto len = static_cast<std::size_t>(2 * order + 1);
  if (flat.size() != 2 * len) throw ValidationError("PhaseVector::from_flat: wrong length");
  return PhaseVector(order, std::vector<double>(flat.begin(), flat.begin() + len),
                     std::vector<double>(flat.begin() + len, flat.end()));
}

std::size_t PhaseVector::slot(ModeIndex l) const {
  if (l.j < -order_ || l.j > order_) {
    throw ValidationError("mode index " + std::to_string(l.j) + " outside order " +
                          std::to_string(order_));
  }
  return static_cast<std::size_t>(l.j + order_);
}

PhaseVector PhaseVector::padded(int order) const {
  if (order < order_) throw ValidationError("PhaseVector::padded: cannot shrink (use project)");
  if (order == order_) return *this;
  PhaseVector out = zero(order);
  const int shift = order - order_;
  std::copy(a_.begin(), a_.end(), out.a_.begin() + shift);
  std::copy(b_.begin(), b_.end(), out.b_.begin() + shift);
  return out;
}

PhaseVector PhaseVector::truncated(int order) const {
  if (order < 0 || order > order_) throw ValidationError("PhaseVector::truncated: order out of range");
  const int shift = order_ - order;
  const auto len = static_cast<std::ptrdiff_t>(2 * order + 1);
  return PhaseVector(order, std::vector<double>(a_.begin() + shift, a_.begin() + shift + len),
                     std::vector<double>(b_.begin() + shift, b_.begin() + shift + len));
}

std::vector<double> PhaseVector::flat() const {
  std::vector<double> out;
  out.reserve(2 * a_.size());
  out.insert(out.end(), a_.begin(), a_.end());
  out.insert(out.end(), b_.begin(), b_.end());
  return out;
}

PhaseVector& PhaseVector::operator+=(const PhaseVector& other) {
  if (other.order_ > order_) *this = padded(other.order_);
  const int shift = order_ - other.order_;
  for (std::size_t i = 0; i < other.a_.size(); ++i) {
    a_[i + shift] += other.a_[i];
    b_[i + shift] += other.b_[i];
  }
  return *this;
}

PhaseVector& PhaseVector::operator-=(const PhaseVector& other) {
  if (other.order_ > order_) *this = padded(other.order_);
  const int shift = order_ - other.order_;
  for (std::size_t i = 0; i < other.a_.size(); ++i) {
    a_[i + shift] -= other.a_[i];
    b_[i + shift] -= other.b_[i];
  }
  return *this;
}

PhaseVector& PhaseVector::operator*=(double s) {
  for (auto& x : a_) x *= s;
  for (auto& x : b_) x *= s;
  return *this;
}

PhaseVector make_state(int order, std::vector<double> a, std::vector<double> b) {
  return PhaseVector(order, std::move(a), std::move(b));
}

double e_norm(const PhaseVector& u) { return std::sqrt(e_inner(u, u)); }

double e_inner(const PhaseVector& u, const PhaseVector& w) {
  const int n = std::min(u.order(), w.order());
  double acc = 0.0;
  for (int j = -n; j <= n; ++j) {
    acc += u.a(ModeIndex{j}) * w.a(ModeIndex{j}) + u.b(ModeIndex{j}) * w.b(ModeIndex{j});
  }
  return acc;
}

double f_theta_norm(const PhaseVector& u, double theta) {
  if (!(theta > 0.0 && theta < 0.5)) throw ValidationError("f_theta_norm: theta must lie in (0, 1/2)");
  double acc = 0.0;
  for (int j = -u.order(); j <= u.order(); ++j) {
    const double w = std::pow(lambda(ModeIndex{j}), -2.0 * theta);
    const double a = u.a(ModeIndex{j});
    const double b = u.b(ModeIndex{j});
    acc += w * (a * a + b * b);
  }
  return std::sqrt(acc);
}

double symplectic_form(const PhaseVector& xi, const PhaseVector& eta) {
  const int n = std::min(xi.order(), eta.order());
  double acc = 0.0;
  for (int j = -n; j <= n; ++j) {
    const ModeIndex l{j};
    acc += xi.a(l) * eta.b(l) - xi.b(l) * eta.a(l);
  }
  return acc;
}

PhaseVector project(const PhaseVector& u, Region region) {
  const int n = u.order();
  if (region.k < 0 || region.k > n) {
    throw ValidationError("project: k = " + std::to_string(region.k) + " outside [0, " +
                          std::to_string(n) + "]");
  }
  std::vector<double> a(u.a().begin(), u.a().end());
  std::vector<double> b(u.b().begin(), u.b().end());
  for (int j = -n; j <= n; ++j) {
    const auto s = static_cast<std::size_t>(j + n);
    const bool low = std::abs(j) <= region.k;
    bool keep_a = false;
    bool keep_b = false;
    switch (region.kind) {
      case Region::Kind::Low: keep_a = keep_b = low; break;
      case Region::Kind::Plus: keep_a = !low; break;
      case Region::Kind::Minus: keep_b = !low; break;
      case Region::Kind::Tail: keep_a = keep_b = !low; break;
    }
    if (!keep_a) a[s] = 0.0;
    if (!keep_b) b[s] = 0.0;
  }
  return PhaseVector(n, std::move(a), std::move(b));
}

double mode_amplitude(const PhaseVector& u, ModeIndex l) {
  return std::hypot(u.a(l), u.b(l));
}

std::size_t min_grid_size(int order) {
  std::size_t m = 1;
  const auto need = static_cast<std::size_t>(4 * (order + 1));
  while (m < need) m <<= 1;
  return m;
}

bool grid_size_ok(std::size_t m, int order) {
  return m >= static_cast<std::size_t>(4 * (order + 1)) && (m & (m - 1)) == 0;
}

GridFunction to_grid(const PhaseVector& u, std::size_t m) {
  if (!grid_size_ok(m, u.order())) {
    throw ValidationError("to_grid: m = " + std::to_string(m) +
                          " must be a power of two >= 4(n+1) = " +
                          std::to_string(4 * (u.order() + 1)));
  }
  const int n = u.order();
  std::vector<double> cu(2 * n + 1), cv(2 * n + 1);
  for (int j = -n; j <= n; ++j) {
    const double w = 1.0 / std::sqrt(lambda(ModeIndex{j}));
    cu[j + n] = w * u.a(ModeIndex{j});
    cv[j + n] = -w * u.b(ModeIndex{j});
  }
  return GridFunction{spectral::synthesize(cu, m), spectral::synthesize(cv, m)};
}

PhaseVector from_grid(const GridFunction& g, int order) {
  if (g.v.size() != g.u.size()) throw ValidationError("from_grid: u and v sample counts differ");
  if (!grid_size_ok(g.m(), order)) {
    throw ValidationError("from_grid: grid too small for requested truncation");
  }
  auto cu = spectral::analyze(g.u, order);
  auto cv = spectral::analyze(g.v, order);
  for (int j = -order; j <= order; ++j) {
    const double w = std::sqrt(lambda(ModeIndex{j}));
    cu[j + order] *= w;
    cv[j + order] *= -w;
  }
  return PhaseVector(order, std::move(cu), std::move(cv));
}

std::string to_csv(const PhaseVector& u) {
  std::string out = "# order=" + std::to_string(u.order()) + "\n";
  char buf[96];
  for (int j = -u.order(); j <= u.order(); ++j) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", j, u.a(ModeIndex{j}), u.b(ModeIndex{j}));
    out += buf;
  }
  return out;
}

PhaseVector phase_vector_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int order = -1;
  std::vector<double> a, b;
  std::vector<bool> seen;
  auto parse_double = [](std::string_view s) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw ValidationError("PhaseVector CSV: bad number '" + std::string(s) + "'");
    }
    return x;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("# order=")) {
      order = std::stoi(line.substr(8));
      if (order < 0) throw ValidationError("PhaseVector CSV: negative order");
      a.assign(2 * order + 1, 0.0);
      b.assign(2 * order + 1, 0.0);
      seen.assign(2 * order + 1, false);
      continue;
    }
    if (line.front() == '#') continue;
    if (order < 0) throw ValidationError("PhaseVector CSV: missing '# order=n' header");
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ValidationError("PhaseVector CSV: expected 'j,a_j,b_j'");
    }
    const int j = std::stoi(line.substr(0, c1));
    if (j < -order || j > order) throw ValidationError("PhaseVector CSV: mode index out of range");
    const auto s = static_cast<std::size_t>(j + order);
    a[s] = parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    b[s] = parse_double(std::string_view(line).substr(c2 + 1));
    seen[s] = true;
  }
  if (order < 0) throw ValidationError("PhaseVector CSV: missing '# order=n' header");
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ValidationError("PhaseVector CSV: missing rows");
  }
  return PhaseVector(order, std::move(a), std::move(b));
}

}  // namespace camel
