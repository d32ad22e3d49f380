#include "partlat/partition.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace partlat {

namespace {

void check_n(int n) {
    if (n < 1) throw std::invalid_argument("ground set size must be positive");
    if (n > 0xFFFF) throw std::invalid_argument("ground set size too large");
}

void check_element(int x, int n) {
    if (x < 1 || x > n)
        throw std::invalid_argument("element " + std::to_string(x) + " out of range [1," +
                                    std::to_string(n) + "]");
}

}  // namespace

Partition Partition::bottom(int n) {
    check_n(n);
    std::vector<std::uint16_t> leader(n);
    std::iota(leader.begin(), leader.end(), 0);
    return Partition(std::move(leader));
}

Partition Partition::top(int n) {
    check_n(n);
    return Partition(std::vector<std::uint16_t>(n, 0));
}

Partition Partition::atom(int n, int x, int y) {
    check_n(n);
    check_element(x, n);
    check_element(y, n);
    if (x == y) throw std::invalid_argument("atom needs two distinct elements");
    if (x > y) std::swap(x, y);
    Partition p = bottom(n);
    p.leader_[y - 1] = static_cast<std::uint16_t>(x - 1);
    return p;
}

Partition Partition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    check_n(n);
    Partition p = bottom(n);
    std::vector<bool> seen(n, false);
    for (const auto& block : blocks) {
        if (block.empty()) continue;
        int lead = n + 1;
        for (int x : block) {
            check_element(x, n);
            if (seen[x - 1]) throw std::invalid_argument("element " + std::to_string(x) + " listed twice");
            seen[x - 1] = true;
            lead = std::min(lead, x);
        }
        for (int x : block) p.leader_[x - 1] = static_cast<std::uint16_t>(lead - 1);
    }
    return p;
}

int Partition::leader_of(int x) const {
    check_element(x, n());
    return leader_[x - 1] + 1;
}

bool Partition::same_block(int x, int y) const {
    check_element(x, n());
    check_element(y, n());
    return leader_[x - 1] == leader_[y - 1];
}

int Partition::block_count() const {
    int count = 0;
    for (int i = 0; i < n(); ++i)
        if (leader_[i] == i) ++count;
    return count;
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out;
    std::vector<int> slot(n(), -1);
    for (int i = 0; i < n(); ++i) {
        int lead = leader_[i];
        if (slot[lead] < 0) {
            slot[lead] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[lead]].push_back(i + 1);
    }
    return out;
}

std::vector<std::vector<int>> Partition::nonsingleton_blocks() const {
    auto all = blocks();
    std::erase_if(all, [](const std::vector<int>& b) { return b.size() < 2; });
    return all;
}

Partition Partition::restricted(int m) const {
    if (m < 1 || m > n())
        throw std::invalid_argument("restriction size out of range");
    // leader values never exceed their index, so a prefix of the leader
    // array is already the canonical form of the restriction.
    return Partition(std::vector<std::uint16_t>(leader_.begin(), leader_.begin() + m));
}

Partition Partition::relabel(const Permutation& pi) const {
    if (pi.n() != n()) throw std::invalid_argument("permutation size mismatch");
    std::vector<std::uint16_t> labels(n());
    for (int i = 0; i < n(); ++i)
        labels[pi.apply(i + 1) - 1] = leader_[i];
    return from_labels(labels);
}

std::size_t Partition::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(leader_.size()));
    for (std::uint16_t v : leader_) mix(v);
    return static_cast<std::size_t>(h);
}

Partition Partition::from_labels(const std::vector<std::uint16_t>& labels) {
    int n = static_cast<int>(labels.size());
    std::vector<std::uint16_t> leader(n);
    std::vector<int> first(n, -1);
    for (int i = 0; i < n; ++i) {
        int lab = labels[i];
        if (first[lab] < 0) first[lab] = i;
        leader[i] = static_cast<std::uint16_t>(first[lab]);
    }
    return Partition(std::move(leader));
}

Partition meet(const Partition& p, const Partition& q) {
    if (p.n() != q.n()) throw std::invalid_argument("meet on different ground sets");
    int n = p.n();
    // Pair (p-leader, q-leader) identifies a block of the meet; the first
    // element seen with a given pair becomes the leader.  The scratch table
    // is stamped per call so it never needs clearing.
    thread_local std::vector<std::uint32_t> stamp;
    thread_local std::vector<std::uint16_t> first;
    thread_local std::uint32_t epoch = 0;
    std::size_t need = static_cast<std::size_t>(n) * n;
    if (stamp.size() < need) {
        stamp.assign(need, 0);
        first.resize(need);
        epoch = 0;
    }
    if (++epoch == 0) {
        std::fill(stamp.begin(), stamp.end(), 0);
        epoch = 1;
    }
    std::vector<std::uint16_t> leader(n);
    for (int i = 0; i < n; ++i) {
        std::size_t key = static_cast<std::size_t>(p.leader_[i]) * n + q.leader_[i];
        if (stamp[key] != epoch) {
            stamp[key] = epoch;
            first[key] = static_cast<std::uint16_t>(i);
        }
        leader[i] = first[key];
    }
    return Partition(std::move(leader));
}

Partition join(const Partition& p, const Partition& q) {
    if (p.n() != q.n()) throw std::invalid_argument("join on different ground sets");
    int n = p.n();
    std::vector<std::uint16_t> root(n);
    for (int i = 0; i < n; ++i) root[i] = static_cast<std::uint16_t>(i);
    auto find = [&root](int x) {
        while (root[x] != x) {
            root[x] = root[root[x]];
            x = root[x];
        }
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) root[std::max(x, y)] = static_cast<std::uint16_t>(std::min(x, y));
    };
    for (int i = 0; i < n; ++i) {
        unite(i, p.leader_[i]);
        unite(i, q.leader_[i]);
    }
    std::vector<std::uint16_t> leader(n);
    for (int i = 0; i < n; ++i) leader[i] = static_cast<std::uint16_t>(find(i));
    return Partition(std::move(leader));
}

bool leq(const Partition& p, const Partition& q) {
    if (p.n() != q.n()) throw std::invalid_argument("order comparison on different ground sets");
    for (int i = 0; i < p.n(); ++i)
        if (q.leader_[i] != q.leader_[p.leader_[i]]) return false;
    return true;
}

Height2Type classify_height2(const Partition& p) {
    if (p.height() != 2) return Height2Type::NotHeight2;
    auto ns = p.nonsingleton_blocks();
    if (ns.size() == 2) return Height2Type::TwoPlusTwo;
    return Height2Type::Three;
}

std::vector<Partition> all_atoms(int n) {
    check_n(n);
    std::vector<Partition> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int x = 1; x <= n; ++x)
        for (int y = x + 1; y <= n; ++y) out.push_back(Partition::atom(n, x, y));
    return out;
}

bool is_extension(const Partition& q, const Partition& p) {
    if (p.n() > q.n()) throw std::invalid_argument("candidate extension has smaller ground set");
    return q.restricted(p.n()) == p;
}

std::vector<Partition> enumerate_extensions(const Partition& p, int m) {
    if (m < 0) throw std::invalid_argument("extension count must be nonnegative");
    std::vector<Partition> out;
    std::vector<Partition> frontier{p};
    for (int step = 0; step < m; ++step) {
        std::vector<Partition> next;
        for (const Partition& cur : frontier) {
            int n = cur.n();
            for (const auto& block : cur.blocks()) {
                auto grown = block;
                grown.push_back(n + 1);
                auto rest = cur.nonsingleton_blocks();
                std::erase(rest, block);
                rest.push_back(grown);
                next.push_back(Partition::from_blocks(n + 1, rest));
            }
            next.push_back(Partition::from_blocks(n + 1, cur.nonsingleton_blocks()));
        }
        frontier = std::move(next);
    }
    return frontier;
}

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    int n = static_cast<int>(image_.size());
    std::vector<bool> seen(n, false);
    for (int v : image_) {
        if (v < 1 || v > n || seen[v - 1])
            throw std::invalid_argument("not a permutation of [n]");
        seen[v - 1] = true;
    }
}

Permutation Permutation::identity(int n) {
    check_n(n);
    std::vector<int> image(n);
    std::iota(image.begin(), image.end(), 1);
    return Permutation(std::move(image));
}

int Permutation::apply(int x) const {
    check_element(x, n());
    return image_[x - 1];
}

Permutation Permutation::inverse() const {
    std::vector<int> image(n());
    for (int i = 0; i < n(); ++i) image[image_[i] - 1] = i + 1;
    return Permutation(std::move(image));
}

Permutation Permutation::then(const Permutation& b) const {
    if (b.n() != n()) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> image(n());
    for (int i = 0; i < n(); ++i) image[i] = b.apply(image_[i]);
    return Permutation(std::move(image));
}

std::pair<TargetShape, Permutation> normalize_target(const Partition& alpha) {
    int h = alpha.height();
    if (h != 1 && h != 2)
        throw std::invalid_argument("target must have height 1 or 2");
    TargetShape shape;
    if (h == 1)
        shape = TargetShape::Atom;
    else
        shape = classify_height2(alpha) == Height2Type::TwoPlusTwo ? TargetShape::TwoPlusTwo
                                                                   : TargetShape::Three;
    int n = alpha.n();
    std::vector<int> image(n, 0);
    int next = 1;
    std::vector<bool> placed(n, false);
    for (const auto& block : alpha.nonsingleton_blocks())
        for (int x : block) {
            image[x - 1] = next++;
            placed[x - 1] = true;
        }
    for (int x = 1; x <= n; ++x)
        if (!placed[x - 1]) image[x - 1] = next++;
    return {shape, Permutation(std::move(image))};
}

std::string shape_name(TargetShape s) {
    switch (s) {
        case TargetShape::Atom: return "atom";
        case TargetShape::TwoPlusTwo: return "two2";
        case TargetShape::Three: return "three";
    }
    return "?";
}

namespace {

class PrtParser {
public:
    PrtParser(const std::string& text, int n) : text_(text), n_(n) {}

    Partition run() {
        expect_word("prt");
        expect('(');
        std::vector<std::vector<int>> blocks;
        if (peek() != ')') {
            blocks.push_back(block());
            while (peek() == ';') {
                ++pos_;
                blocks.push_back(block());
            }
        }
        expect(')');
        if (pos_ != text_.size()) fail("trailing characters");
        for (std::size_t i = 0; i + 1 < blocks.size(); ++i)
            if (blocks[i].front() >= blocks[i + 1].front())
                fail("blocks must be ordered by first element");
        return Partition::from_blocks(n_, blocks);
    }

private:
    std::vector<int> block() {
        if (peek() == '{') return braces_block();
        return digits_block();
    }

    std::vector<int> braces_block() {
        expect('{');
        std::vector<int> out{integer()};
        while (peek() == ',') {
            ++pos_;
            out.push_back(integer());
            if (out[out.size() - 2] >= out.back())
                fail("elements within a block must be strictly increasing");
        }
        expect('}');
        return out;
    }

    std::vector<int> digits_block() {
        if (n_ > 9) fail("digit form requires n <= 9");
        std::vector<int> out;
        while (is_digit(peek())) {
            int v = text_[pos_++] - '0';
            if (v == 0) fail("element 0 is not in the ground set");
            if (!out.empty() && out.back() >= v)
                fail("elements within a block must be strictly increasing");
            out.push_back(v);
        }
        if (out.empty()) fail("expected a block");
        return out;
    }

    int integer() {
        if (!is_digit(peek())) fail("expected a number");
        long v = 0;
        while (is_digit(peek())) {
            v = v * 10 + (text_[pos_++] - '0');
            if (v > 0xFFFF) fail("element too large");
        }
        return static_cast<int>(v);
    }

    static bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void expect_word(const std::string& w) {
        if (text_.compare(pos_, w.size(), w) != 0) fail("expected '" + w + "'");
        pos_ += w.size();
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("bad partition text '" + text_ + "': " + why);
    }

    const std::string& text_;
    int n_;
    std::size_t pos_ = 0;
};

}  // namespace

Partition parse_prt(const std::string& text, int n) {
    check_n(n);
    return PrtParser(text, n).run();
}

std::string format_prt(const Partition& p) {
    std::ostringstream out;
    out << "prt(";
    bool compact = p.n() <= 9;
    bool first_block = true;
    for (const auto& block : p.nonsingleton_blocks()) {
        if (!first_block) out << ';';
        first_block = false;
        if (compact) {
            for (int x : block) out << x;
        } else {
            out << '{';
            for (std::size_t i = 0; i < block.size(); ++i) {
                if (i) out << ',';
                out << block[i];
            }
            out << '}';
        }
    }
    out << ')';
    return out.str();
}

}  // namespace partlat
