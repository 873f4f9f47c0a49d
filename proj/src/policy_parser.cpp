/*
   Copyright 2026 The mcfe-si Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <algorithm>
#include <cctype>
#include <charconv>

#include "mcfe/policy.hpp"

namespace mcfe::policy {

namespace {

bool is_gate(const PolicyNode& n, PolicyNode::Kind kind) { return n.kind == kind; }

// Merges children that are gates of the same kind into the parent.
std::vector<PolicyNode> flatten(PolicyNode::Kind kind, std::vector<PolicyNode> children) {
    std::vector<PolicyNode> out;
    out.reserve(children.size());
    for (auto& c : children) {
        if (is_gate(c, kind)) {
            for (auto& gc : c.children) out.push_back(std::move(gc));
        } else {
            out.push_back(std::move(c));
        }
    }
    return out;
}

PolicyNode make_gate(PolicyNode::Kind kind, std::vector<PolicyNode> children) {
    if (children.empty()) throw PolicyError("gate without operands", 0);
    children = flatten(kind, std::move(children));
    if (children.size() == 1) return std::move(children.front());
    PolicyNode n;
    n.kind = kind;
    n.children = std::move(children);
    return n;
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
           });
}

bool is_keyword(std::string_view word) {
    return iequals(word, "AND") || iequals(word, "OR") || iequals(word, "NOT") || iequals(word, "THRESHOLD");
}

bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',' || c == ';' ||
           c == '\'' || c == '"';
}

std::string quote_if_needed(const std::string& label) {
    const bool bare = !label.empty() && !is_keyword(label) &&
                      std::none_of(label.begin(), label.end(), is_delimiter);
    if (bare) return label;
    const char q = label.find('"') == std::string::npos ? '"' : '\'';
    return std::string(1, q) + label + q;
}

enum class Tok { kEnd, kLParen, kRParen, kComma, kSemi, kAnd, kOr, kNot, kThreshold, kName };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        const std::size_t start = i_;
        if (i_ == src_.size()) return {Tok::kEnd, "", start};
        const char c = src_[i_];
        switch (c) {
            case '(': ++i_; return {Tok::kLParen, "(", start};
            case ')': ++i_; return {Tok::kRParen, ")", start};
            case ',': ++i_; return {Tok::kComma, ",", start};
            case ';': ++i_; return {Tok::kSemi, ";", start};
            case '\'':
            case '"': {
                const std::size_t close = src_.find(c, i_ + 1);
                if (close == std::string_view::npos) throw PolicyError("unterminated quoted attribute", start);
                std::string text(src_.substr(i_ + 1, close - i_ - 1));
                if (text.empty()) throw PolicyError("empty attribute name", start);
                i_ = close + 1;
                return {Tok::kName, std::move(text), start};
            }
            default: break;
        }
        while (i_ < src_.size() && !is_delimiter(src_[i_])) ++i_;
        std::string word(src_.substr(start, i_ - start));
        if (iequals(word, "AND")) return {Tok::kAnd, word, start};
        if (iequals(word, "OR")) return {Tok::kOr, word, start};
        if (iequals(word, "NOT")) return {Tok::kNot, word, start};
        if (iequals(word, "THRESHOLD")) return {Tok::kThreshold, word, start};
        return {Tok::kName, std::move(word), start};
    }

  private:
    std::string_view src_;
    std::size_t i_ = 0;
};

class Parser {
  public:
    explicit Parser(std::string_view src) : lexer_(src) { advance(); }

    PolicyNode parse() {
        PolicyNode root = expr();
        if (cur_.kind != Tok::kEnd) throw PolicyError("unexpected '" + cur_.text + "'", cur_.pos);
        return root;
    }

  private:
    void advance() { cur_ = lexer_.next(); }

    void expect(Tok kind, std::string_view what) {
        if (cur_.kind != kind) {
            throw PolicyError("expected " + std::string(what) +
                                  (cur_.kind == Tok::kEnd ? " but input ended" : " before '" + cur_.text + "'"),
                              cur_.pos);
        }
        advance();
    }

    PolicyNode expr() {
        std::vector<PolicyNode> terms;
        terms.push_back(term());
        while (cur_.kind == Tok::kOr) {
            advance();
            terms.push_back(term());
        }
        return make_gate(PolicyNode::Kind::kOr, std::move(terms));
    }

    PolicyNode term() {
        std::vector<PolicyNode> factors;
        factors.push_back(unary());
        for (;;) {
            if (cur_.kind == Tok::kAnd) {
                advance();
            } else if (cur_.kind != Tok::kNot) {
                break;
            }
            factors.push_back(unary());
        }
        return make_gate(PolicyNode::Kind::kAnd, std::move(factors));
    }

    PolicyNode unary() {
        if (cur_.kind == Tok::kNot) {
            advance();
            return negate(unary());
        }
        return primary();
    }

    PolicyNode primary() {
        switch (cur_.kind) {
            case Tok::kLParen: {
                advance();
                PolicyNode inner = expr();
                expect(Tok::kRParen, "')'");
                return inner;
            }
            case Tok::kThreshold: return threshold();
            case Tok::kName: {
                PolicyNode leaf = PolicyNode::leaf(cur_.text);
                advance();
                return leaf;
            }
            case Tok::kEnd: throw PolicyError("expected attribute but input ended", cur_.pos);
            default: throw PolicyError("expected attribute before '" + cur_.text + "'", cur_.pos);
        }
    }

    PolicyNode threshold() {
        const std::size_t gate_pos = cur_.pos;
        advance();
        expect(Tok::kLParen, "'(' after THRESHOLD");
        if (cur_.kind != Tok::kName) throw PolicyError("expected threshold count", cur_.pos);
        std::size_t t = 0;
        const auto& digits = cur_.text;
        const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t);
        if (ec != std::errc{} || end != digits.data() + digits.size())
            throw PolicyError("threshold count must be a non-negative integer", cur_.pos);
        advance();
        expect(Tok::kSemi, "';' after threshold count");
        std::vector<PolicyNode> operands;
        operands.push_back(expr());
        while (cur_.kind == Tok::kComma) {
            advance();
            operands.push_back(expr());
        }
        expect(Tok::kRParen, "')' closing THRESHOLD");
        if (t < 1 || t > operands.size()) {
            throw PolicyError("threshold " + std::to_string(t) + " outside [1, " +
                                  std::to_string(operands.size()) + "]",
                              gate_pos);
        }
        return PolicyNode::threshold_of(t, std::move(operands));
    }

    Lexer lexer_;
    Token cur_{Tok::kEnd, "", 0};
};

}  // namespace

PolicyNode PolicyNode::leaf(std::string attribute, bool negated) {
    PolicyNode n;
    n.kind = Kind::kLeaf;
    n.attribute = std::move(attribute);
    n.negated = negated;
    return n;
}

PolicyNode PolicyNode::all_of(std::vector<PolicyNode> children) {
    return make_gate(Kind::kAnd, std::move(children));
}

PolicyNode PolicyNode::any_of(std::vector<PolicyNode> children) {
    return make_gate(Kind::kOr, std::move(children));
}

PolicyNode PolicyNode::threshold_of(std::size_t t, std::vector<PolicyNode> children) {
    if (t < 1 || t > children.size()) {
        throw PolicyError("threshold " + std::to_string(t) + " outside [1, " + std::to_string(children.size()) + "]",
                          0);
    }
    PolicyNode n;
    n.kind = Kind::kThreshold;
    n.threshold = t;
    n.children = std::move(children);
    return n;
}

std::size_t PolicyNode::leaf_count() const {
    if (kind == Kind::kLeaf) return 1;
    std::size_t total = 0;
    for (const auto& c : children) total += c.leaf_count();
    return total;
}

std::string PolicyNode::to_string() const {
    switch (kind) {
        case Kind::kLeaf: return (negated ? "NOT " : "") + quote_if_needed(attribute);
        case Kind::kAnd:
        case Kind::kOr: {
            const std::string op = kind == Kind::kAnd ? " AND " : " OR ";
            std::string out = "(";
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (i) out += op;
                out += children[i].to_string();
            }
            return out + ")";
        }
        case Kind::kThreshold: {
            std::string out = "THRESHOLD(" + std::to_string(threshold) + ";";
            for (std::size_t i = 0; i < children.size(); ++i) {
                out += i ? ", " : " ";
                out += children[i].to_string();
            }
            return out + ")";
        }
    }
    return {};
}

PolicyNode negate(const PolicyNode& node) {
    using Kind = PolicyNode::Kind;
    std::vector<PolicyNode> flipped;
    for (const auto& c : node.children) flipped.push_back(negate(c));
    switch (node.kind) {
        case Kind::kLeaf: return PolicyNode::leaf(node.attribute, !node.negated);
        case Kind::kAnd: return PolicyNode::any_of(std::move(flipped));
        case Kind::kOr: return PolicyNode::all_of(std::move(flipped));
        case Kind::kThreshold:
            // Fewer than t true is at least n - t + 1 false.
            return PolicyNode::threshold_of(node.children.size() - node.threshold + 1, std::move(flipped));
    }
    return node;
}

PolicyNode parse_policy(std::string_view text) { return Parser(text).parse(); }

}  // namespace mcfe::policy
