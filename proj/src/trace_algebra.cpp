#include "symqm/trace_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace symqm {

namespace {

std::vector<Letter> minimal_rotation(std::vector<Letter> v) {
  if (v.size() <= 1) return v;
  std::vector<Letter> best = v;
  for (std::size_t s = 1; s < v.size(); ++s) {
    std::rotate(v.begin(), v.begin() + 1, v.end());
    if (v < best) best = v;
  }
  return best;
}

}  // namespace

TraceWord::TraceWord(std::vector<Letter> letters)
    : letters_(minimal_rotation(std::move(letters))) {
  if (letters_.empty()) throw std::invalid_argument("empty trace word");
}

TraceWord TraceWord::creators(int k) {
  if (k < 1) throw std::invalid_argument("creators: k < 1");
  return TraceWord(std::vector<Letter>(k, Letter::create));
}

TraceWord TraceWord::annihilators(int k) {
  if (k < 1) throw std::invalid_argument("annihilators: k < 1");
  return TraceWord(std::vector<Letter>(k, Letter::annihilate));
}

TraceWord TraceWord::mixed(int creates, int annihilates) {
  std::vector<Letter> v(creates, Letter::create);
  v.insert(v.end(), annihilates, Letter::annihilate);
  return TraceWord(std::move(v));
}

int TraceWord::num_creates() const {
  return static_cast<int>(
      std::count(letters_.begin(), letters_.end(), Letter::create));
}

int TraceWord::num_annihilates() const {
  return static_cast<int>(size()) - num_creates();
}

TraceWord TraceWord::conjugated() const {
  std::vector<Letter> v;
  v.reserve(size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    v.push_back(symqm::conjugate(*it));
  }
  return TraceWord(std::move(v));
}

std::string TraceWord::str() const {
  std::string out;
  std::size_t i = 0;
  while (i < letters_.size()) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    out += (letters_[i] == Letter::create ? 'A' : 'a');
    out += std::to_string(j - i);
    i = j;
  }
  return out;
}

bool TraceWord::operator<(const TraceWord& o) const {
  if (size() != o.size()) return size() < o.size();
  return letters_ < o.letters_;
}

// ---------------------------------------------------------------------------
// TraceExpr basics
// ---------------------------------------------------------------------------

namespace {

bool word_list_less(const std::vector<TraceWord>& a,
                    const std::vector<TraceWord>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TraceExpr::TraceExpr(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("TraceExpr: N must be >= 2");
}

TraceExpr TraceExpr::scalar(int n, const Rational& c) {
  TraceExpr e(n);
  e.add_term(c, {});
  return e;
}

TraceExpr TraceExpr::single(int n, const TraceWord& w, const Rational& c) {
  TraceExpr e(n);
  e.add_term(c, {w});
  return e;
}

TraceExpr TraceExpr::product(int n, const Rational& c,
                             std::vector<TraceWord> words) {
  TraceExpr e(n);
  e.add_term(c, std::move(words));
  return e;
}

bool TraceExpr::pure_creation() const {
  for (const auto& t : terms_) {
    for (const auto& w : t.traces) {
      if (!w.pure_creation()) return false;
    }
  }
  return true;
}

void TraceExpr::add_term(const Rational& c, std::vector<TraceWord> traces) {
  Rational coeff = c;
  coeff.canonicalize();
  if (coeff == 0) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), traces,
      [](const TraceMonomial& m, const std::vector<TraceWord>& t) {
        return word_list_less(m.traces, t);
      });
  if (it != terms_.end() && it->traces == traces) {
    it->coeff += coeff;
    if (it->coeff == 0) terms_.erase(it);
  } else {
    terms_.insert(it, TraceMonomial{coeff, std::move(traces)});
  }
}

TraceExpr& TraceExpr::operator+=(const TraceExpr& o) {
  if (n_ != o.n_) throw std::invalid_argument("TraceExpr: mixed N");
  for (const auto& t : o.terms_) add_term(t.coeff, t.traces);
  return *this;
}

TraceExpr& TraceExpr::operator-=(const TraceExpr& o) {
  if (n_ != o.n_) throw std::invalid_argument("TraceExpr: mixed N");
  for (const auto& t : o.terms_) add_term(-t.coeff, t.traces);
  return *this;
}

TraceExpr operator*(const TraceExpr& a, const TraceExpr& b) {
  if (a.n() != b.n()) throw std::invalid_argument("TraceExpr: mixed N");
  TraceExpr out(a.n());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      std::vector<TraceWord> words = ta.traces;
      words.insert(words.end(), tb.traces.begin(), tb.traces.end());
      out.add_term(ta.coeff * tb.coeff, std::move(words));
    }
  }
  return out;
}

TraceExpr& TraceExpr::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool TraceExpr::operator==(const TraceExpr& o) const {
  return n_ == o.n_ && terms_.size() == o.terms_.size() &&
         std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                    [](const TraceMonomial& a, const TraceMonomial& b) {
                      return a.coeff == b.coeff && a.traces == b.traces;
                    });
}

std::string TraceExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (t.traces.empty()) {
      os << to_fraction_string(c);
    } else {
      if (c != 1) os << to_fraction_string(c) << "*";
      for (const auto& w : t.traces) os << "(" << w.str() << ")";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Normal ordering engine
// ---------------------------------------------------------------------------
//
// Internally each letter carries a rank recording its position in operator
// order; creation letters commute among themselves and so do annihilation
// letters, so only the relative order of opposite-species letters matters.
// One reduction step takes the highest-ranked annihilator that still stands
// left of some creator and moves it past everything to its right:
//
//   a X = X a + [a, X],
//
// where the commutator expands, via the su(N) completeness relation
// sum_A (T_A)_ij (T_A)_kl = 1/2 (d_il d_jk - (1/N) d_ij d_kl), into one
// trace surgery per creation letter in X: a split when both letters sit in
// the same trace, a fusion when they sit in different traces.

namespace {

struct GLetter {
  Letter sp;
  int rank;
  bool operator<(const GLetter& o) const {
    if (sp != o.sp) return sp < o.sp;
    return rank < o.rank;
  }
  bool operator==(const GLetter& o) const {
    return sp == o.sp && rank == o.rank;
  }
};

using GWord = std::vector<GLetter>;

struct GMono {
  std::vector<GWord> words;
};

GWord minimal_rotation_g(GWord v) {
  if (v.size() <= 1) return v;
  GWord best = v;
  for (std::size_t s = 1; s < v.size(); ++s) {
    std::rotate(v.begin(), v.begin() + 1, v.end());
    if (std::lexicographical_compare(v.begin(), v.end(), best.begin(),
                                     best.end()))
      best = v;
  }
  return best;
}

// Canonical key; also renumbers ranks to 0..L-1 in place.
std::vector<int> canonicalize(GMono& g) {
  std::vector<int> ranks;
  for (const auto& w : g.words)
    for (const auto& l : w) ranks.push_back(l.rank);
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  for (auto& w : g.words) {
    for (auto& l : w) {
      l.rank = static_cast<int>(
          std::lower_bound(ranks.begin(), ranks.end(), l.rank) -
          ranks.begin());
    }
    w = minimal_rotation_g(std::move(w));
  }
  std::sort(g.words.begin(), g.words.end(),
            [](const GWord& a, const GWord& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return std::lexicographical_compare(a.begin(), a.end(),
                                                  b.begin(), b.end());
            });
  std::vector<int> key;
  for (const auto& w : g.words) {
    key.push_back(static_cast<int>(w.size()));
    for (const auto& l : w) {
      key.push_back(static_cast<int>(l.sp));
      key.push_back(l.rank);
    }
  }
  return key;
}

struct Frontier {
  std::map<std::vector<int>, std::pair<GMono, Rational>> items;

  void push(GMono g, const Rational& c) {
    if (c == 0) return;
    auto key = canonicalize(g);
    auto [it, inserted] = items.try_emplace(key, std::move(g), c);
    if (!inserted) {
      it->second.second += c;
      if (it->second.second == 0) items.erase(it);
    }
  }
};

// Appends `w` to the monomial; an empty word closes to tr(1) = N and a
// single-letter word vanishes by tracelessness (signalled by return false).
bool close_word(GMono& g, GWord w, Rational& coeff, int n) {
  if (w.empty()) {
    coeff *= n;
    return true;
  }
  if (w.size() == 1) return false;
  g.words.push_back(std::move(w));
  return true;
}

// Letters of `w` in cyclic chain order starting after `from`, stopping
// before `to` (exclusive); from == to means the full remainder of the word.
GWord cyclic_slice(const GWord& w, std::size_t from, std::size_t to) {
  GWord out;
  for (std::size_t i = (from + 1) % w.size(); i != to; i = (i + 1) % w.size()) {
    out.push_back(w[i]);
  }
  return out;
}

struct SurgerySite {
  std::size_t word;
  std::size_t pos;
};

void expand_surgery(const GMono& g, const Rational& coeff, int n,
                    const SurgerySite& a, const SurgerySite& c,
                    Frontier& out) {
  GMono base;
  for (std::size_t i = 0; i < g.words.size(); ++i) {
    if (i != a.word && i != c.word) base.words.push_back(g.words[i]);
  }
  const Rational half(1, 2);
  const Rational min_inv_2n(-1, 2 * n);
  if (a.word == c.word) {
    const GWord& w = g.words[a.word];
    GWord u = cyclic_slice(w, a.pos, c.pos);
    GWord v = cyclic_slice(w, c.pos, a.pos);
    {  // 1/2 tr(U) tr(V)
      GMono t = base;
      Rational cf = coeff * half;
      if (close_word(t, u, cf, n) && close_word(t, v, cf, n))
        out.push(std::move(t), cf);
    }
    {  // -1/(2N) tr(UV)
      GMono t = base;
      Rational cf = coeff * min_inv_2n;
      GWord uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      if (close_word(t, std::move(uv), cf, n)) out.push(std::move(t), cf);
    }
  } else {
    const GWord& wa = g.words[a.word];
    const GWord& wc = g.words[c.word];
    GWord x = cyclic_slice(wa, a.pos, a.pos);
    GWord y = cyclic_slice(wc, c.pos, c.pos);
    {  // 1/2 tr(XY)
      GMono t = base;
      Rational cf = coeff * half;
      GWord xy = x;
      xy.insert(xy.end(), y.begin(), y.end());
      if (close_word(t, std::move(xy), cf, n)) out.push(std::move(t), cf);
    }
    {  // -1/(2N) tr(X) tr(Y)
      GMono t = base;
      Rational cf = coeff * min_inv_2n;
      if (close_word(t, x, cf, n) && close_word(t, y, cf, n))
        out.push(std::move(t), cf);
    }
  }
}

// Finds the annihilation letter that must move next: the one of highest
// rank standing left of at least one creation letter. Returns false when
// the monomial is already normal ordered.
bool find_pivot(const GMono& g, SurgerySite& alpha, int& max_rank) {
  int max_c_rank = -1;
  max_rank = -1;
  for (const auto& w : g.words) {
    for (const auto& l : w) {
      max_rank = std::max(max_rank, l.rank);
      if (l.sp == Letter::create) max_c_rank = std::max(max_c_rank, l.rank);
    }
  }
  bool found = false;
  int best = -1;
  for (std::size_t wi = 0; wi < g.words.size(); ++wi) {
    for (std::size_t li = 0; li < g.words[wi].size(); ++li) {
      const GLetter& l = g.words[wi][li];
      if (l.sp == Letter::annihilate && l.rank < max_c_rank && l.rank > best) {
        best = l.rank;
        alpha = {wi, li};
        found = true;
      }
    }
  }
  return found;
}

enum class FinalizePolicy { throw_on_unrepresentable, drop_annihilators };

// Runs the reduction to completion and returns the normal-ordered terms.
void reduce(Frontier frontier, int n, FinalizePolicy policy, TraceExpr& out) {
  while (!frontier.items.empty()) {
    Frontier next;
    for (auto& [key, item] : frontier.items) {
      GMono& g = item.first;
      const Rational& coeff = item.second;
      SurgerySite alpha;
      int max_rank = -1;
      if (!find_pivot(g, alpha, max_rank)) {
        // Normal ordered: emit.
        bool has_annihilator = false;
        for (const auto& w : g.words) {
          for (const auto& l : w) {
            if (l.sp == Letter::annihilate) has_annihilator = true;
          }
        }
        if (policy == FinalizePolicy::drop_annihilators && has_annihilator)
          continue;
        std::vector<TraceWord> pure_c, mixed, pure_a;
        for (const auto& w : g.words) {
          std::vector<Letter> letters;
          letters.reserve(w.size());
          for (const auto& l : w) letters.push_back(l.sp);
          TraceWord tw(std::move(letters));
          if (tw.pure_creation())
            pure_c.push_back(std::move(tw));
          else if (tw.pure_annihilation())
            pure_a.push_back(std::move(tw));
          else
            mixed.push_back(std::move(tw));
        }
        if (mixed.size() > 1) {
          throw std::logic_error(
              "normal_order: normal form needs more than one mixed trace "
              "factor in a monomial; pattern outside the supported API");
        }
        std::sort(pure_c.begin(), pure_c.end());
        std::sort(pure_a.begin(), pure_a.end());
        std::vector<TraceWord> words = std::move(pure_c);
        words.insert(words.end(), mixed.begin(), mixed.end());
        words.insert(words.end(), pure_a.begin(), pure_a.end());
        out.add_term(coeff, std::move(words));
        continue;
      }
      // Move-past term: alpha jumps to the far right.
      {
        GMono g1 = g;
        g1.words[alpha.word][alpha.pos].rank = max_rank + 1;
        next.push(std::move(g1), coeff);
      }
      // One contraction per creation letter to the right of alpha.
      const int arank = g.words[alpha.word][alpha.pos].rank;
      for (std::size_t wi = 0; wi < g.words.size(); ++wi) {
        for (std::size_t li = 0; li < g.words[wi].size(); ++li) {
          const GLetter& l = g.words[wi][li];
          if (l.sp == Letter::create && l.rank > arank) {
            expand_surgery(g, coeff, n, alpha, {wi, li}, next);
          }
        }
      }
    }
    frontier = std::move(next);
  }
}

Frontier seed_frontier(const TraceExpr& e) {
  Frontier f;
  for (const auto& t : e.terms()) {
    GMono g;
    bool dead = false;
    int rank = 0;
    for (const auto& w : t.traces) {
      if (w.size() == 1) {
        dead = true;  // tr of a single traceless matrix
        break;
      }
      GWord gw;
      for (Letter l : w.letters()) gw.push_back({l, rank++});
      g.words.push_back(std::move(gw));
    }
    if (!dead) f.push(std::move(g), t.coeff);
  }
  return f;
}

}  // namespace

TraceExpr normal_order(const TraceExpr& e) {
  TraceExpr out(e.n());
  reduce(seed_frontier(e), e.n(), FinalizePolicy::throw_on_unrepresentable,
         out);
  return out;
}

TraceExpr normal_ordered_creation_part(const TraceExpr& e) {
  TraceExpr out(e.n());
  reduce(seed_frontier(e), e.n(), FinalizePolicy::drop_annihilators, out);
  return out;
}

TraceExpr commutator(const TraceExpr& x, const TraceExpr& y) {
  return normal_order(x * y - y * x);
}

Rational vacuum_expectation(const TraceExpr& e) {
  TraceExpr nf = normal_ordered_creation_part(e);
  for (const auto& t : nf.terms()) {
    if (t.scalar()) return t.coeff;
  }
  return 0;
}

TraceExpr conjugate(const TraceExpr& e) {
  TraceExpr out(e.n());
  for (const auto& t : e.terms()) {
    std::vector<TraceWord> words;
    words.reserve(t.traces.size());
    for (auto it = t.traces.rbegin(); it != t.traces.rend(); ++it) {
      words.push_back(it->conjugated());
    }
    out.add_term(t.coeff, std::move(words));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cayley-Hamilton reduction
// ---------------------------------------------------------------------------

namespace {

TraceExpr mul_pure(const TraceExpr& a, const TraceExpr& b) {
  TraceExpr out(a.n());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      std::vector<TraceWord> words = ta.traces;
      words.insert(words.end(), tb.traces.begin(), tb.traces.end());
      std::sort(words.begin(), words.end());
      out.add_term(ta.coeff * tb.coeff, std::move(words));
    }
  }
  return out;
}

// tr((a†)^m) for commuting traceless N x N arguments, expressed through
// tr((a†)^2) .. tr((a†)^N) via Newton's identities with vanishing p_1.
TraceExpr power_sum(int n, int m) {
  if (m == 0) return TraceExpr::scalar(n, n);
  if (m == 1) return TraceExpr(n);
  if (m <= n) return TraceExpr::single(n, TraceWord::creators(m));
  // Elementary symmetric polynomials e_1..e_N in terms of power sums.
  std::vector<TraceExpr> e;
  e.push_back(TraceExpr::identity(n));
  for (int k = 1; k <= n; ++k) {
    TraceExpr acc(n);
    int sign = 1;
    for (int i = 1; i <= k; ++i) {
      TraceExpr term = mul_pure(e[k - i], power_sum(n, i));
      term *= Rational(sign, k);
      acc += term;
      sign = -sign;
    }
    e.push_back(std::move(acc));
  }
  // p_m = sum_{k=1..N} (-1)^{k+1} e_k p_{m-k}
  std::vector<TraceExpr> p;
  for (int i = 0; i <= n; ++i) p.push_back(power_sum(n, i));
  for (int i = n + 1; i <= m; ++i) {
    TraceExpr acc(n);
    int sign = 1;
    for (int k = 1; k <= n; ++k) {
      TraceExpr term = mul_pure(e[k], p[i - k]);
      term *= Rational(sign);
      acc += term;
      sign = -sign;
    }
    p.push_back(std::move(acc));
  }
  return p[m];
}

}  // namespace

TraceExpr cayley_hamilton_reduce(const TraceExpr& e) {
  const int n = e.n();
  TraceExpr out(n);
  std::vector<TraceMonomial> work(e.terms().begin(), e.terms().end());
  while (!work.empty()) {
    TraceMonomial m = std::move(work.back());
    work.pop_back();
    bool dead = false;
    std::size_t long_idx = m.traces.size();
    for (std::size_t i = 0; i < m.traces.size(); ++i) {
      const TraceWord& w = m.traces[i];
      if (w.size() == 1) {
        dead = true;
        break;
      }
      if (static_cast<int>(w.size()) > n) {
        if (!w.pure_creation()) {
          throw std::domain_error(
              "cayley_hamilton_reduce: trace longer than N contains "
              "annihilation operators");
        }
        long_idx = i;
      }
    }
    if (dead) continue;
    if (long_idx == m.traces.size()) {
      std::vector<TraceWord> words = std::move(m.traces);
      bool pure = std::all_of(words.begin(), words.end(),
                              [](const TraceWord& w) {
                                return w.pure_creation();
                              });
      if (pure) std::sort(words.begin(), words.end());
      out.add_term(m.coeff, std::move(words));
      continue;
    }
    TraceExpr sub = power_sum(n, static_cast<int>(m.traces[long_idx].size()));
    for (const auto& st : sub.terms()) {
      TraceMonomial nm;
      nm.coeff = m.coeff * st.coeff;
      nm.traces.assign(m.traces.begin(), m.traces.begin() + long_idx);
      nm.traces.insert(nm.traces.end(), st.traces.begin(), st.traces.end());
      nm.traces.insert(nm.traces.end(), m.traces.begin() + long_idx + 1,
                       m.traces.end());
      work.push_back(std::move(nm));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary Fierz contraction
// ---------------------------------------------------------------------------

namespace {

void check_site(const TraceWord& w, int pos, Letter expect, const char* what) {
  if (pos < 0 || pos >= static_cast<int>(w.size()))
    throw std::invalid_argument(std::string("fierz_contract: ") + what +
                                " position out of range");
  if (w.letters()[static_cast<std::size_t>(pos)] != expect)
    throw std::invalid_argument(std::string("fierz_contract: ") + what +
                                " letter has the wrong species");
}

std::vector<Letter> slice_letters(const TraceWord& w, int from, int to) {
  std::vector<Letter> out;
  const auto& l = w.letters();
  const int sz = static_cast<int>(w.size());
  for (int i = (from + 1) % sz; i != to; i = (i + 1) % sz) {
    out.push_back(l[static_cast<std::size_t>(i)]);
  }
  return out;
}

void emit(TraceExpr& out, Rational coeff, int n,
          const std::vector<std::vector<Letter>>& words) {
  std::vector<TraceWord> traces;
  for (const auto& w : words) {
    if (w.empty()) {
      coeff *= n;
      continue;
    }
    if (w.size() == 1) return;  // single-letter trace vanishes
    traces.emplace_back(w);
  }
  out.add_term(coeff, std::move(traces));
}

}  // namespace

TraceExpr fierz_contract(int n, const TraceWord& word, int pos_annihilate,
                         int pos_create) {
  check_site(word, pos_annihilate, Letter::annihilate, "annihilate");
  check_site(word, pos_create, Letter::create, "create");
  if (pos_annihilate == pos_create)
    throw std::invalid_argument("fierz_contract: identical positions");
  auto u = slice_letters(word, pos_annihilate, pos_create);
  auto v = slice_letters(word, pos_create, pos_annihilate);
  TraceExpr out(n);
  emit(out, Rational(1, 2), n, {u, v});
  auto uv = u;
  uv.insert(uv.end(), v.begin(), v.end());
  emit(out, Rational(-1, 2 * n), n, {uv});
  return out;
}

TraceExpr fierz_contract(int n, const TraceWord& left, int pos_in_left,
                         const TraceWord& right, int pos_in_right) {
  check_site(left, pos_in_left, Letter::annihilate, "annihilate");
  check_site(right, pos_in_right, Letter::create, "create");
  auto x = slice_letters(left, pos_in_left, pos_in_left);
  auto y = slice_letters(right, pos_in_right, pos_in_right);
  TraceExpr out(n);
  auto xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  emit(out, Rational(1, 2), n, {xy});
  emit(out, Rational(-1, 2 * n), n, {x, y});
  return out;
}

}  // namespace symqm
