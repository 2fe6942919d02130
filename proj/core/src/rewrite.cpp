#include "dla/rewrite.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>

namespace dla {

CommutatorTree CommutatorTree::leaf(std::size_t symbol) {
  CommutatorTree t;
  t.symbol_ = symbol;
  return t;
}

CommutatorTree CommutatorTree::bracket(CommutatorTree left, CommutatorTree right) {
  CommutatorTree t;
  t.node_ = std::make_shared<const Node>(Node{std::move(left), std::move(right)});
  return t;
}

const CommutatorTree& CommutatorTree::left() const {
  if (!node_) fail(ErrorCode::kInvalidArgument, "leaf has no left operand");
  return node_->left;
}

const CommutatorTree& CommutatorTree::right() const {
  if (!node_) fail(ErrorCode::kInvalidArgument, "leaf has no right operand");
  return node_->right;
}

std::size_t CommutatorTree::leaf_count() const {
  return is_leaf() ? 1 : left().leaf_count() + right().leaf_count();
}

bool CommutatorTree::is_right_nested() const {
  return is_leaf() || (left().is_leaf() && right().is_right_nested());
}

std::string CommutatorTree::to_string(std::span<const std::string> symbols) const {
  if (is_leaf())
    return symbol_ < symbols.size() ? symbols[symbol_] : "X" + std::to_string(symbol_);
  return "[" + left().to_string(symbols) + "," + right().to_string(symbols) + "]";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string>& symbols)
      : text_(text), symbols_(symbols) {}

  CommutatorTree parse() {
    CommutatorTree t = tree();
    skip_space();
    if (pos_ != text_.size()) error("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kMalformedInput, "commutator expression: " + what + " at position " +
                                         std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  CommutatorTree tree() {
    skip_space();
    if (pos_ >= text_.size()) error("unexpected end of input");
    if (text_[pos_] == '[') {
      ++pos_;
      CommutatorTree l = tree();
      expect(',');
      CommutatorTree r = tree();
      expect(']');
      return CommutatorTree::bracket(std::move(l), std::move(r));
    }
    const std::size_t start = pos_;
    auto ident_char = [](char c, bool first) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
             (!first && std::isdigit(static_cast<unsigned char>(c)));
    };
    if (!ident_char(text_[pos_], true)) error("expected a symbol or '['");
    while (pos_ < text_.size() && ident_char(text_[pos_], false)) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end()) {
      symbols_.push_back(name);
      return CommutatorTree::leaf(symbols_.size() - 1);
    }
    return CommutatorTree::leaf(static_cast<std::size_t>(it - symbols_.begin()));
  }

  std::string_view text_;
  std::vector<std::string>& symbols_;
  std::size_t pos_ = 0;
};

using Sequence = std::vector<std::size_t>;
using Combination = std::map<Sequence, double>;

void accumulate(Combination& into, const Sequence& s, double c) {
  if (c == 0.0) return;
  into[s] += c;
}

Sequence append(Sequence s, std::size_t outer) {
  s.push_back(outer);
  return s;
}

// [val(p), val(q)] for right-nested p, q as a right-nested combination.
Combination bracket(const Sequence& p, const Sequence& q) {
  Combination out;
  if (p.size() == 1) {
    // [a, val(q)] is right-nested already.
    accumulate(out, append(q, p.front()), 1.0);
    return out;
  }
  if (q.size() == 1) {
    // [val(p), b] = -[b, val(p)].
    accumulate(out, append(p, q.front()), -1.0);
    return out;
  }
  // q = [a, q']:  [P,[a,Q']] = [a,[P,Q']] - [[a,P],Q'].
  const std::size_t a = q.back();
  const Sequence q_inner(q.begin(), q.end() - 1);
  for (const auto& [s, c] : bracket(p, q_inner)) accumulate(out, append(s, a), c);
  for (const auto& [s, c] : bracket(append(p, a), q_inner)) accumulate(out, s, -c);
  return out;
}

Combination rewrite(const CommutatorTree& t) {
  Combination out;
  if (t.is_leaf()) {
    out[{t.symbol()}] = 1.0;
    return out;
  }
  const Combination l = rewrite(t.left());
  const Combination r = rewrite(t.right());
  for (const auto& [p, cp] : l)
    for (const auto& [q, cq] : r)
      for (const auto& [s, c] : bracket(p, q)) accumulate(out, s, cp * cq * c);
  return out;
}

// [X,[a,a]] = 0 and [X,[b,a]] = -[X,[a,b]]: drop vanishing terms and fold
// each term into its innermost-swapped twin when that twin is present.
std::vector<RightNestedTerm> finish(const Combination& combo) {
  Combination normalized;
  for (const auto& [s, c] : combo) {
    if (s.size() >= 2) {
      if (s[0] == s[1]) continue;
      Sequence twin = s;
      std::swap(twin[0], twin[1]);
      if (auto it = normalized.find(twin); it != normalized.end()) {
        it->second -= c;
        continue;
      }
    }
    normalized[s] += c;
  }
  std::vector<RightNestedTerm> out;
  for (const auto& [s, c] : normalized)
    if (std::abs(c) > 1e-12) out.push_back({c, s});
  return out;
}

// Right-nested tree -> sequence (innermost first); false otherwise.
bool to_sequence(const CommutatorTree& t, Sequence& out) {
  if (t.is_leaf()) {
    out.push_back(t.symbol());
    return true;
  }
  if (!t.left().is_leaf()) return false;
  if (!to_sequence(t.right(), out)) return false;
  out.push_back(t.left().symbol());
  return true;
}

}  // namespace

CommutatorTree CommutatorTree::parse(std::string_view text, std::vector<std::string>& symbols) {
  return Parser(text, symbols).parse();
}

std::string RightNestedTerm::to_string(std::span<const std::string> symbols) const {
  auto name = [&](std::size_t k) {
    return k < symbols.size() ? symbols[k] : "X" + std::to_string(k);
  };
  if (sequence.empty()) return "0";
  std::string inner = name(sequence.front());
  for (std::size_t j = 1; j < sequence.size(); ++j)
    inner = "[" + name(sequence[j]) + "," + inner + "]";
  return inner;
}

std::vector<RightNestedTerm> right_nested_rewrite(const CommutatorTree& tree) {
  return finish(rewrite(tree));
}

std::vector<RightNestedTerm> jacobi_rewrite_step(const CommutatorTree& tree) {
  if (tree.is_leaf() || tree.right().is_leaf() || !tree.right().left().is_leaf() ||
      !tree.right().right().is_leaf())
    fail(ErrorCode::kMalformedInput, "Jacobi step needs the shape [P,[A,B]] with leaves A, B");
  Sequence p;
  if (!to_sequence(tree.left(), p))
    fail(ErrorCode::kMalformedInput, "Jacobi step needs a right-nested P in [P,[A,B]]");
  const std::size_t a = tree.right().left().symbol();
  const std::size_t b = tree.right().right().symbol();
  // [P,[A,B]] = -[A,[B,P]] + [B,[A,P]]; both are right-nested in P.
  std::vector<RightNestedTerm> out;
  out.push_back({-1.0, append(append(p, b), a)});
  out.push_back({1.0, append(append(p, a), b)});
  return out;
}

std::string to_string(std::span<const RightNestedTerm> terms,
                      std::span<const std::string> symbols) {
  if (terms.empty()) return "0";
  std::string s;
  char buf[32];
  for (const RightNestedTerm& t : terms) {
    const double c = t.coefficient;
    if (s.empty()) {
      if (c == -1.0) s += "-";
      else if (c != 1.0) { std::snprintf(buf, sizeof buf, "%g*", c); s += buf; }
    } else {
      s += c < 0 ? " - " : " + ";
      if (std::abs(c) != 1.0) { std::snprintf(buf, sizeof buf, "%g*", std::abs(c)); s += buf; }
    }
    s += t.to_string(symbols);
  }
  return s;
}

}  // namespace dla
