#include "mixid/word.hpp"

#include <stdexcept>

namespace mixid {

void ConstProd::push_reduce(ConstAtom atom) {
  if (!a_.empty() && a_.back().name == atom.name && a_.back().sign == -atom.sign) {
    a_.pop_back();
  } else {
    a_.push_back(std::move(atom));
  }
}

ConstProd ConstProd::named(const std::string& name) {
  ConstProd c;
  c.a_.push_back({name, 1});
  return c;
}

ConstProd operator*(const ConstProd& a, const ConstProd& b) {
  ConstProd r = a;
  for (const auto& atom : b.a_) r.push_reduce(atom);
  return r;
}

ConstProd ConstProd::inverse() const {
  ConstProd r;
  for (auto it = a_.rbegin(); it != a_.rend(); ++it) r.a_.push_back({it->name, -it->sign});
  return r;
}

std::string ConstProd::str() const {
  if (a_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) out += "*";
    out += a_[i].name;
    if (a_[i].sign < 0) out += "^-1";
  }
  return out;
}

WordBuildResult Word::reduce(std::vector<ConstProd> consts, std::vector<int> vars,
                               std::vector<int> signs) {
  if (vars.size() != signs.size() || consts.size() != vars.size() + 1) {
    throw std::invalid_argument("Word: letter sequence is not alternating");
  }
  for (int v : vars) {
    if (v < 1) throw std::invalid_argument("Word: variable indices are 1-based");
  }
  bool was_positive = !vars.empty();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j + 1 < vars.size(); ++j) {
      // constant between letters j and j+1 is consts[j+1]
      if (vars[j] == vars[j + 1] && signs[j] == -signs[j + 1] && consts[j + 1].is_identity()) {
        ConstProd merged = consts[j] * consts[j + 2];
        consts.erase(consts.begin() + static_cast<long>(j), consts.begin() + static_cast<long>(j) + 3);
        consts.insert(consts.begin() + static_cast<long>(j), std::move(merged));
        vars.erase(vars.begin() + static_cast<long>(j), vars.begin() + static_cast<long>(j) + 2);
        signs.erase(signs.begin() + static_cast<long>(j), signs.begin() + static_cast<long>(j) + 2);
        changed = true;
        break;
      }
    }
  }
  Word w;
  w.consts_ = std::move(consts);
  w.vars_ = std::move(vars);
  w.signs_ = std::move(signs);
  bool emptied = was_positive && w.vars_.empty();
  return {std::move(w), emptied};
}

Word Word::from_letters(std::vector<ConstProd> consts, std::vector<int> vars,
                        std::vector<int> signs) {
  return reduce(std::move(consts), std::move(vars), std::move(signs)).word;
}

Word Word::variable(int var, int sign) {
  Word w;
  w.consts_ = {ConstProd{}, ConstProd{}};
  w.vars_ = {var};
  w.signs_ = {sign};
  return w;
}

Word Word::constant(ConstProd c) {
  Word w;
  w.consts_ = {std::move(c)};
  return w;
}

int Word::var_count() const {
  int m = 0;
  for (int v : vars_) m = std::max(m, v);
  return m;
}

Word operator*(const Word& a, const Word& b) {
  std::vector<ConstProd> consts(a.consts_.begin(), a.consts_.end() - 1);
  consts.push_back(a.consts_.back() * b.consts_.front());
  consts.insert(consts.end(), b.consts_.begin() + 1, b.consts_.end());
  std::vector<int> vars = a.vars_;
  vars.insert(vars.end(), b.vars_.begin(), b.vars_.end());
  std::vector<int> signs = a.signs_;
  signs.insert(signs.end(), b.signs_.begin(), b.signs_.end());
  return Word::from_letters(std::move(consts), std::move(vars), std::move(signs));
}

Word Word::inverse() const {
  std::vector<ConstProd> consts;
  for (auto it = consts_.rbegin(); it != consts_.rend(); ++it) consts.push_back(it->inverse());
  std::vector<int> vars(vars_.rbegin(), vars_.rend());
  std::vector<int> signs;
  for (auto it = signs_.rbegin(); it != signs_.rend(); ++it) signs.push_back(-*it);
  return from_letters(std::move(consts), std::move(vars), std::move(signs));
}

Word Word::pow(int e) const {
  Word base = e < 0 ? inverse() : *this;
  int n = e < 0 ? -e : e;
  Word r;
  for (int i = 0; i < n; ++i) r = r * base;
  return r;
}

Word Word::conjugate(const Word& by) const { return by.inverse() * *this * by; }

Word Word::substitute_vars(const std::function<Word(int)>& image) const {
  Word r = Word::constant(consts_[0]);
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    Word v = image(vars_[j]);
    if (signs_[j] < 0) v = v.inverse();
    r = r * v * Word::constant(consts_[j + 1]);
  }
  return r;
}

FreeWord Word::content() const {
  FreeWord c;
  for (std::size_t j = 0; j < vars_.size(); ++j) c = c * FreeWord::letter(vars_[j], signs_[j]);
  return c;
}

bool operator==(const Word& a, const Word& b) {
  return a.consts_ == b.consts_ && a.vars_ == b.vars_ && a.signs_ == b.signs_;
}

std::string Word::str() const {
  if (vars_.empty()) return consts_[0].str();
  std::string out;
  auto emit = [&out](const std::string& piece) {
    if (!out.empty()) out += "*";
    out += piece;
  };
  if (!consts_[0].is_identity()) emit(consts_[0].str());
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    emit(var_name(vars_[j]) + (signs_[j] < 0 ? "^-1" : ""));
    if (!consts_[j + 1].is_identity()) emit(consts_[j + 1].str());
  }
  return out;
}

IndexClassification classify(const Word& w) {
  IndexClassification cls;
  for (int j = 1; j <= w.length() - 1; ++j) {
    if (w.var_at(j) != w.var_at(j + 1)) {
      cls.j0.push_back(j);
    } else if (w.sign_at(j) == w.sign_at(j + 1)) {
      cls.jplus.push_back(j);
    } else {
      cls.jminus.push_back(j);
      cls.critical.emplace_back(j, w.const_at(j));
    }
  }
  return cls;
}

bool is_strong(const Word& w) { return classify(w).jminus.empty(); }

bool is_singular(const Word& w) { return w.content().is_empty(); }

Word collapse_at(const Word& w, int j) {
  auto cls = classify(w);
  bool critical = false;
  for (int c : cls.jminus) critical |= (c == j);
  if (!critical) throw std::invalid_argument("collapse_at: index is not critical");
  std::vector<ConstProd> consts;
  std::vector<int> vars, signs;
  for (int i = 0; i <= w.length(); ++i) consts.push_back(w.const_at(i));
  for (int i = 1; i <= w.length(); ++i) {
    vars.push_back(w.var_at(i));
    signs.push_back(w.sign_at(i));
  }
  consts[static_cast<std::size_t>(j)] = ConstProd{};
  return Word::from_letters(std::move(consts), std::move(vars), std::move(signs));
}

CollapseResult collapse_critical(const Word& w, const DropFn& drop) {
  Word cur = w;
  std::uint64_t budget = 0;
  int steps = 0;
  for (;;) {
    auto cls = classify(cur);
    bool dropped = false;
    for (const auto& [j, c] : cls.critical) {
      if (auto support = drop(c)) {
        cur = collapse_at(cur, j);
        budget += *support;
        ++steps;
        dropped = true;
        break;
      }
    }
    if (!dropped) break;
  }
  return {std::move(cur), budget, steps};
}

}  // namespace mixid
