#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "tensorkit/dense_tensor.hpp"
#include "tensorkit/errors.hpp"

namespace tk {

// Index-notation expressions:
//
//   expression := ['+'|'-'] term (('+'|'-') term)*
//   term       := [rational] factor+
//   factor     := name index_block*
//   index_block:= '^''{'letter+'}' | '_''{'letter+'}' | '^'letter | '_'letter
//   rational   := integer ['/' integer]
//   equation   := expression '=' expression
//
// Whitespace separates factors; '*' between factors is accepted and ignored.
// Names 'e' (permutation symbol), 'd' (Kronecker delta) and 'pd' (partial
// derivative; exactly one index) are reserved.

using Rational = boost::rational<long long>;

enum class Mode { strict, cartesian };

struct IndexOccurrence {
    char symbol;
    Variance position;
    int factor;  // which factor of the term
    int slot;    // which index of that factor
    bool operator==(const IndexOccurrence&) const = default;
};

struct TensorFactor {
    std::string name;
    std::vector<std::pair<char, Variance>> indices;  // in written order
    bool is_derivative = false;
    bool operator==(const TensorFactor&) const = default;
};

struct Term {
    Rational coefficient{1};
    std::vector<TensorFactor> factors;
    bool operator==(const Term&) const = default;
};

struct Expression {
    std::vector<Term> terms;
    bool operator==(const Expression&) const = default;
};

struct Equation {
    Expression lhs;
    Expression rhs;
    bool operator==(const Equation&) const = default;
};

Expression parse_expression(const std::string& text);
Equation parse_equation(const std::string& text);

struct DummyPair {
    char symbol;
    IndexOccurrence first;
    IndexOccurrence second;
    bool operator==(const DummyPair&) const = default;
};

struct TermIndexInfo {
    std::vector<IndexOccurrence> free;       // ordered by first appearance
    std::vector<DummyPair> dummies;
};

// Splits one term's indices into free and dummy.  A symbol occurring more
// than twice is a rule violation and throws ShapeError; validate() reports
// the same situation as a diagnostic instead.
TermIndexInfo classify_indices(const Term& term);

struct Diagnostic {
    std::string rule;  // "index-count", "dummy-variance", "free-set", "free-variance"
    int term;          // offending term (equations: lhs terms first), -1 if cross-term
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<IndexOccurrence> free_indices;        // of the first term
    std::vector<std::vector<DummyPair>> dummy_pairs;  // per term
    std::vector<Diagnostic> diagnostics;
};

// Checks the summation-convention rules: no symbol more than twice per term,
// dummy pairs complementary (strict mode only), and the same free indices in
// every term (same positions too in strict mode).  Equations are checked as
// one term list spanning both sides.
ValidationReport validate(const Expression& expr, Mode mode);
ValidationReport validate(const Equation& eq, Mode mode);

// Renames each dummy symbol to the lexicographically first letter not used
// by `reserved`, the term's other symbols, or earlier renames.
Term rename_dummies(const Term& term, const std::set<char>& reserved);

std::string render(const TensorFactor& f);
std::string render(const Term& t);
std::string render(const Expression& e);
std::string render(const Equation& e);

} // namespace tk
