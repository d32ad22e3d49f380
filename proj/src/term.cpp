#include "partlat/term.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace partlat {

LatticeTerm LatticeTerm::variable(int index, int arity) {
    if (arity < 1) throw std::invalid_argument("arity must be positive");
    if (index < 1 || index > arity)
        throw std::invalid_argument("variable index " + std::to_string(index) +
                                    " out of range [1," + std::to_string(arity) + "]");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Variable;
    node->var = index;
    return LatticeTerm(std::move(node), arity);
}

LatticeTerm LatticeTerm::combine(Kind kind, const LatticeTerm& l, const LatticeTerm& r) {
    if (l.arity_ != r.arity_) throw std::invalid_argument("mixed arities in term");
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->l = l.node_;
    node->r = r.node_;
    return LatticeTerm(std::move(node), l.arity_);
}

LatticeTerm LatticeTerm::meet(const LatticeTerm& l, const LatticeTerm& r) {
    return combine(Kind::Meet, l, r);
}

LatticeTerm LatticeTerm::join(const LatticeTerm& l, const LatticeTerm& r) {
    return combine(Kind::Join, l, r);
}

int LatticeTerm::var_index() const {
    if (kind() != Kind::Variable) throw std::logic_error("not a variable");
    return node_->var;
}

LatticeTerm LatticeTerm::left() const {
    if (kind() == Kind::Variable) throw std::logic_error("variable has no children");
    return LatticeTerm(node_->l, arity_);
}

LatticeTerm LatticeTerm::right() const {
    if (kind() == Kind::Variable) throw std::logic_error("variable has no children");
    return LatticeTerm(node_->r, arity_);
}

int LatticeTerm::depth() const {
    struct Rec {
        static int go(const Node* nd) {
            if (nd->kind == Kind::Variable) return 1;
            return 1 + std::max(go(nd->l.get()), go(nd->r.get()));
        }
    };
    return Rec::go(node_.get());
}

int LatticeTerm::node_count() const {
    struct Rec {
        static int go(const Node* nd) {
            if (nd->kind == Kind::Variable) return 1;
            return 1 + go(nd->l.get()) + go(nd->r.get());
        }
    };
    return Rec::go(node_.get());
}

bool LatticeTerm::operator==(const LatticeTerm& other) const {
    struct Rec {
        static bool go(const Node* a, const Node* b) {
            if (a == b) return true;
            if (a->kind != b->kind) return false;
            if (a->kind == Kind::Variable) return a->var == b->var;
            return go(a->l.get(), b->l.get()) && go(a->r.get(), b->r.get());
        }
    };
    return arity_ == other.arity_ && Rec::go(node_.get(), other.node_.get());
}

Partition eval(const LatticeTerm& t, const std::vector<Partition>& tuple) {
    if (static_cast<int>(tuple.size()) != t.arity())
        throw std::invalid_argument("tuple length does not match term arity");
    int n = tuple.empty() ? 0 : tuple.front().n();
    for (const Partition& p : tuple)
        if (p.n() != n) throw std::invalid_argument("tuple members live on different ground sets");
    struct Rec {
        const std::vector<Partition>& tuple;
        Partition go(const LatticeTerm::Node* nd) {
            if (nd->kind == LatticeTerm::Kind::Variable) return tuple[nd->var - 1];
            Partition l = go(nd->l.get());
            Partition r = go(nd->r.get());
            return nd->kind == LatticeTerm::Kind::Meet ? meet(l, r) : join(l, r);
        }
    };
    return Rec{tuple}.go(t.node_.get());
}

namespace {

class TermParser {
public:
    TermParser(const std::string& text, int k) : text_(text), k_(k) {}

    LatticeTerm run() {
        LatticeTerm t = join_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return t;
    }

private:
    LatticeTerm join_expr() {
        LatticeTerm t = meet_expr();
        while (true) {
            skip_ws();
            if (peek() != '|') return t;
            ++pos_;
            t = LatticeTerm::join(t, meet_expr());
        }
    }

    LatticeTerm meet_expr() {
        LatticeTerm t = primary();
        while (true) {
            skip_ws();
            if (peek() != '&') return t;
            ++pos_;
            t = LatticeTerm::meet(t, primary());
        }
    }

    LatticeTerm primary() {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            LatticeTerm t = join_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return t;
        }
        if (peek() == 'x') {
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a variable index");
            long v = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                v = v * 10 + (text_[pos_++] - '0');
                if (v > 1'000'000) fail("variable index too large");
            }
            return LatticeTerm::variable(static_cast<int>(v), k_);
        }
        fail("expected a variable or '('");
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("bad term text '" + text_ + "': " + why);
    }

    const std::string& text_;
    int k_;
    std::size_t pos_ = 0;
};

}  // namespace

LatticeTerm parse_term(const std::string& text, int k) {
    return TermParser(text, k).run();
}

std::string format_term(const LatticeTerm& t) {
    using Kind = LatticeTerm::Kind;
    std::ostringstream out;
    struct Rec {
        std::ostringstream& out;
        // A child is parenthesized iff printing it bare would change the
        // tree: any Join under Meet, and any right child of its own kind
        // (both operators are printed left-associatively).
        void go(const LatticeTerm::Node* nd, Kind parent, bool right_child) {
            if (nd->kind == Kind::Variable) {
                out << 'x' << nd->var;
                return;
            }
            bool parens = (parent == Kind::Meet && nd->kind == Kind::Join) ||
                          (right_child && parent == nd->kind);
            if (parens) out << '(';
            go(nd->l.get(), nd->kind, false);
            out << (nd->kind == Kind::Meet ? " & " : " | ");
            go(nd->r.get(), nd->kind, true);
            if (parens) out << ')';
        }
    };
    Rec{out}.go(t.node_.get(), Kind::Variable, false);
    return out.str();
}

TermVector random_terms(int k, int count, int max_depth, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (count < 1) throw std::invalid_argument("count must be positive");
    if (max_depth < 1) throw std::invalid_argument("max depth must be positive");
    SplitMix64 rng(seed);
    struct Gen {
        SplitMix64& rng;
        int k;
        LatticeTerm go(int depth_left) {
            if (depth_left > 1 && rng.below(3) != 0) {
                bool use_meet = rng.below(2) == 0;
                LatticeTerm l = go(depth_left - 1);
                LatticeTerm r = go(depth_left - 1);
                return use_meet ? LatticeTerm::meet(l, r) : LatticeTerm::join(l, r);
            }
            return LatticeTerm::variable(1 + static_cast<int>(rng.below(k)), k);
        }
    };
    Gen gen{rng, k};
    TermVector tv;
    tv.k = k;
    tv.terms.reserve(count);
    for (int i = 0; i < count; ++i) tv.terms.push_back(gen.go(max_depth));
    return tv;
}

std::string derive_session_key(const TermVector& tv, const std::vector<Partition>& tuple) {
    if (tv.terms.empty()) throw std::invalid_argument("empty term vector");
    std::string key;
    for (std::size_t i = 0; i < tv.terms.size(); ++i) {
        if (i) key += '\n';
        key += format_prt(eval(tv.terms[i], tuple));
    }
    return key;
}

}  // namespace partlat
