#include "mixid/pl_homeo.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixid {

void SlopeCocycle::canonicalize() {
  for (std::size_t i = 0; i + 1 < values.size();) {
    if (values[i] == values[i + 1]) {
      values.erase(values.begin() + static_cast<long>(i) + 1);
      breaks.erase(breaks.begin() + static_cast<long>(i) + 1);
    } else {
      ++i;
    }
  }
}

Rat SlopeCocycle::at(const Rat& t) const {
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i] < t && t < breaks[i + 1]) return values[i];
    if (t == breaks[i]) return values[i];  // convention: right-continuous at knots
  }
  return values.back();
}

Rat SlopeCocycle::max_value() const {
  Rat m = values.front();
  for (const auto& v : values) m = max(m, v);
  return m;
}

Rat SlopeCocycle::min_value() const {
  Rat m = values.front();
  for (const auto& v : values) m = min(m, v);
  return m;
}

std::string SlopeCocycle::str() const {
  std::string out = "slope{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += " ";
    out += values[i].str() + "@(" + breaks[i].str() + "," + breaks[i + 1].str() + ")";
  }
  return out + "}";
}

PLHomeo::PLHomeo() : t_{Rat(0), Rat(1)}, v_{Rat(0), Rat(1)} {}

PLHomeo PLHomeo::identity() { return PLHomeo(); }

PLHomeo PLHomeo::from_points(std::vector<std::pair<Rat, Rat>> pts) {
  PLHomeo h;
  h.t_.clear();
  h.v_.clear();
  for (auto& [t, v] : pts) {
    h.t_.push_back(std::move(t));
    h.v_.push_back(std::move(v));
  }
  h.validate();
  h.canonicalize();
  return h;
}

PLHomeo PLHomeo::ramp(const Rat& lambda) {
  if (!(Rat(1) < lambda)) throw std::invalid_argument("PLHomeo::ramp: lambda must exceed 1");
  Rat half = Rat(1, 2);
  return from_points({{Rat(0), Rat(0)}, {half / lambda, half}, {Rat(1), Rat(1)}});
}

PLHomeo PLHomeo::bump(const Rat& a, const Rat& b) {
  if (!(Rat(0) <= a && a < b && b <= Rat(1))) {
    throw std::invalid_argument("PLHomeo::bump: interval outside [0,1]");
  }
  Rat m = (Rat(2) * a + b) / Rat(3);
  Rat mv = (a + Rat(2) * b) / Rat(3);
  std::vector<std::pair<Rat, Rat>> pts;
  if (Rat(0) < a) pts.push_back({Rat(0), Rat(0)});
  pts.push_back({a, a});
  pts.push_back({m, mv});
  pts.push_back({b, b});
  if (b < Rat(1)) pts.push_back({Rat(1), Rat(1)});
  return from_points(std::move(pts));
}

PLHomeo PLHomeo::sqrt_chords(int depth) {
  if (depth < 1) throw std::invalid_argument("PLHomeo::sqrt_chords: depth must be positive");
  std::vector<std::pair<Rat, Rat>> pts;
  pts.push_back({Rat(0), Rat(0)});
  for (int i = depth; i >= 0; --i) {
    pts.push_back({Rat(BigInt(1), BigInt(4).pow(static_cast<std::uint64_t>(i))),
                   Rat(BigInt(1), BigInt(2).pow(static_cast<std::uint64_t>(i)))});
  }
  return from_points(std::move(pts));
}

void PLHomeo::validate() const {
  if (t_.size() != v_.size() || t_.size() < 2) throw std::invalid_argument("PLHomeo: bad shape");
  if (!(t_.front() == Rat(0)) || !(v_.front() == Rat(0)) || !(t_.back() == Rat(1)) ||
      !(v_.back() == Rat(1))) {
    throw std::invalid_argument("PLHomeo: must fix 0 and 1");
  }
  for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
    if (!(t_[i] < t_[i + 1]) || !(v_[i] < v_[i + 1])) {
      throw std::invalid_argument("PLHomeo: knots must increase strictly");
    }
  }
}

void PLHomeo::canonicalize() {
  // drop interior knots where the slope does not change
  for (std::size_t i = 1; i + 1 < t_.size();) {
    Rat left = (v_[i] - v_[i - 1]) / (t_[i] - t_[i - 1]);
    Rat right = (v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]);
    if (left == right) {
      t_.erase(t_.begin() + static_cast<long>(i));
      v_.erase(v_.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
}

Rat PLHomeo::operator()(const Rat& t) const {
  if (t < Rat(0) || Rat(1) < t) throw std::domain_error("PLHomeo: argument outside [0,1]");
  std::size_t i = static_cast<std::size_t>(
      std::lower_bound(t_.begin(), t_.end(), t) - t_.begin());
  if (i == 0) return v_[0];
  Rat s = (v_[i] - v_[i - 1]) / (t_[i] - t_[i - 1]);
  return v_[i - 1] + s * (t - t_[i - 1]);
}

PLHomeo PLHomeo::inverse() const {
  PLHomeo h;
  h.t_ = v_;
  h.v_ = t_;
  return h;
}

PLHomeo compose(const PLHomeo& a, const PLHomeo& b) {
  // knots: a's knots plus preimages of b's knots under a
  std::vector<Rat> ts = a.t_;
  PLHomeo ainv = a.inverse();
  for (const auto& u : b.t_) ts.push_back(ainv(u));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<std::pair<Rat, Rat>> pts;
  for (const auto& t : ts) pts.push_back({t, b(a(t))});
  return PLHomeo::from_points(std::move(pts));
}

SlopeCocycle PLHomeo::slope() const {
  SlopeCocycle s;
  s.breaks = t_;
  for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
    s.values.push_back((v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]));
  }
  s.canonicalize();
  return s;
}

Rat PLHomeo::slope_at_zero() const { return (v_[1] - v_[0]) / (t_[1] - t_[0]); }

bool PLHomeo::is_identity() const { return t_ == v_ && t_.size() == 2; }

std::optional<Rat> PLHomeo::witness_not_identity() const {
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (!(t_[i] == v_[i])) return t_[i];
  }
  for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
    Rat mid = (t_[i] + t_[i + 1]) / Rat(2);
    if (!((*this)(mid) == mid)) return mid;
  }
  return std::nullopt;
}

std::string PLHomeo::str() const {
  std::string out = "pl[";
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (i) out += " ";
    out += "(" + t_[i].str() + "," + v_[i].str() + ")";
  }
  return out + "]";
}

SlopeCocycle pullback(const SlopeCocycle& s, const PLHomeo& a) {
  SlopeCocycle r;
  PLHomeo ainv = a.inverse();
  std::vector<Rat> breaks = a.knots();
  for (const auto& u : s.breaks) breaks.push_back(ainv(u));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  r.breaks = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rat mid = (breaks[i] + breaks[i + 1]) / Rat(2);
    r.values.push_back(s.at(a(mid)));
  }
  r.canonicalize();
  return r;
}

SlopeCocycle pointwise_product(const SlopeCocycle& a, const SlopeCocycle& b) {
  SlopeCocycle r;
  std::vector<Rat> breaks = a.breaks;
  breaks.insert(breaks.end(), b.breaks.begin(), b.breaks.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  r.breaks = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Rat mid = (breaks[i] + breaks[i + 1]) / Rat(2);
    r.values.push_back(a.at(mid) * b.at(mid));
  }
  r.canonicalize();
  return r;
}

}  // namespace mixid
