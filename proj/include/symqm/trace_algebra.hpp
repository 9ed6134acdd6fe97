#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symqm/rational.hpp"

namespace symqm {

// Adjoint-valued matrix operators appearing inside a trace: a† and a.
enum class Letter : std::uint8_t { create = 0, annihilate = 1 };

inline Letter conjugate(Letter l) {
  return l == Letter::create ? Letter::annihilate : Letter::create;
}

// A single-trace word over {a†, a}, e.g. (a†a†), (a†^{n-1}a), (aa).
//
// The word is cyclic (trace index structure) and is stored in its canonical
// rotation: the lexicographically minimal one with a† < a. Operator order
// inside an expression is carried by TraceMonomial, not by the word itself;
// see TraceExpr for the ordering convention.
class TraceWord {
 public:
  explicit TraceWord(std::vector<Letter> letters);

  static TraceWord creators(int k);      // (a†^k), k >= 1
  static TraceWord annihilators(int k);  // (a^k),  k >= 1
  // (a†^c a^a) in normal-ordered internal arrangement.
  static TraceWord mixed(int creates, int annihilates);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  int num_creates() const;
  int num_annihilates() const;
  bool pure_creation() const { return num_annihilates() == 0; }
  bool pure_annihilation() const { return num_creates() == 0; }
  bool mixed_species() const {
    return num_creates() > 0 && num_annihilates() > 0;
  }

  // Conjugate word: species flipped, chain reversed, re-canonicalized.
  TraceWord conjugated() const;

  std::string str() const;  // e.g. "A2", "A1a1", "a3"

  bool operator==(const TraceWord& o) const { return letters_ == o.letters_; }
  // Canonical order: (length, letters).
  bool operator<(const TraceWord& o) const;

 private:
  std::vector<Letter> letters_;
};

// coeff * (w_1)(w_2)...(w_k): an ordered product of trace words.
struct TraceMonomial {
  Rational coeff;
  std::vector<TraceWord> traces;

  bool scalar() const { return traces.empty(); }
};

// An exact linear combination of ordered products of trace words, with the
// gauge rank N substituted as an integer (coefficients stay rational).
//
// Semantics: within a monomial the operator order is the concatenation of
// its words, letters in stored order. normal_order() rewrites an expression
// so that, in every monomial, all annihilation operators stand to the right
// of all creation operators; such monomials are stored with pure-creation
// words first, at most one mixed word, then pure-annihilation words, which
// makes the concatenation order agree with normal order.
class TraceExpr {
 public:
  explicit TraceExpr(int n);  // zero expression
  static TraceExpr scalar(int n, const Rational& c);
  static TraceExpr identity(int n) { return scalar(n, 1); }
  static TraceExpr single(int n, const TraceWord& w, const Rational& c = 1);
  // Ordered product coeff * (words[0])(words[1])... taken verbatim.
  static TraceExpr product(int n, const Rational& c,
                           std::vector<TraceWord> words);

  int n() const { return n_; }
  const std::vector<TraceMonomial>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  bool pure_creation() const;

  TraceExpr& operator+=(const TraceExpr& o);
  TraceExpr& operator-=(const TraceExpr& o);
  friend TraceExpr operator+(TraceExpr a, const TraceExpr& b) {
    return a += b;
  }
  friend TraceExpr operator-(TraceExpr a, const TraceExpr& b) {
    return a -= b;
  }
  // Ordered operator product (a acts first, then... a is written first).
  friend TraceExpr operator*(const TraceExpr& a, const TraceExpr& b);
  TraceExpr& operator*=(const Rational& c);
  friend TraceExpr operator*(const Rational& c, TraceExpr e) {
    return e *= c;
  }

  bool operator==(const TraceExpr& o) const;

  // Stable text form, e.g. "3/2*(A2)(a1) + 2*(A1a1)".
  std::string str() const;

  void add_term(const Rational& coeff, std::vector<TraceWord> traces);

 private:
  int n_;
  std::vector<TraceMonomial> terms_;  // merged, sorted, no zero coefficients
};

// Pushes every annihilation operator to the right of every creation
// operator using [a_A, a†_B] = δ_AB and the su(N) Fierz identity; exact
// operator identity at the given N. Single-letter traces vanish by
// tracelessness and are dropped on the fly.
//
// Throws std::logic_error for the (unsupported) normal forms that would
// need two mixed-species trace factors in one monomial; no expression built
// from the patterns of the Hamiltonian ever hits this.
TraceExpr normal_order(const TraceExpr& e);

// normal_order(x*y - y*x).
TraceExpr commutator(const TraceExpr& x, const TraceExpr& y);

// Normal orders e and keeps only the monomials free of annihilation
// operators, i.e. the part of e that acts nontrivially on the Fock vacuum.
// Never throws: the dropped monomials are exactly the unrepresentable ones.
TraceExpr normal_ordered_creation_part(const TraceExpr& e);

// Rewrites every pure-creation trace of length > N in terms of
// (a†^2)..(a†^N) via Newton's identities with tr(a†) = 0. Traces of length
// > N containing annihilators are not reducible here -> std::domain_error.
TraceExpr cayley_hamilton_reduce(const TraceExpr& e);

// <0| e |0> of the normal-ordered expression: the scalar part.
Rational vacuum_expectation(const TraceExpr& e);

// Conjugate expression: every word conjugated, word order reversed.
TraceExpr conjugate(const TraceExpr& e);

// One elementary commutation [a, a†] inside a single trace: contracts the
// annihilate letter at pos_annihilate with the create letter at pos_create
// (positions in the stored rotation), splitting the trace in two.
TraceExpr fierz_contract(int n, const TraceWord& word, int pos_annihilate,
                         int pos_create);

// One elementary commutation across two traces: the annihilate letter of
// `left` against the create letter of `right`; fuses the traces.
TraceExpr fierz_contract(int n, const TraceWord& left, int pos_in_left,
                         const TraceWord& right, int pos_in_right);

}  // namespace symqm
