#include "grigrow/grig.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <list>
#include <stdexcept>
#include <unordered_map>

namespace grigrow::grig {

namespace {

// bc=cb=d, bd=db=c, cd=dc=b
char third_letter(char x, char y) {
    static constexpr char all[] = {'b', 'c', 'd'};
    for (char t : all)
        if (t != x && t != y) return t;
    return 0;  // unreachable
}

// Sections of a single generator, indexed by the original first letter.
// sec0: b->a, c->a, d->1 ; sec1: b->c, c->d, d->b ; 'a' has trivial sections.
char sec_of(char g, char bit) {
    if (bit == '0') {
        switch (g) {
            case 'b': return 'a';
            case 'c': return 'a';
            case 'd': return 0;
            default: return 0;
        }
    }
    switch (g) {
        case 'b': return 'c';
        case 'c': return 'd';
        case 'd': return 'b';
        default: return 0;
    }
}

void push_reduced(std::string& st, char g) {
    st.push_back(g);
    while (st.size() >= 2) {
        char y = st[st.size() - 1], x = st[st.size() - 2];
        if (x == y) {
            st.resize(st.size() - 2);
            continue;
        }
        if (x != 'a' && y != 'a') {
            char t = third_letter(x, y);
            st.resize(st.size() - 2);
            st.push_back(t);
            continue;
        }
        break;
    }
}

}  // namespace

bool is_letter(char c) { return c == 'a' || c == 'b' || c == 'c' || c == 'd'; }

std::string reduce(std::string_view letters) {
    std::string st;
    st.reserve(letters.size());
    for (char g : letters) {
        if (!is_letter(g)) throw std::invalid_argument("grig: invalid letter in word");
        push_reduced(st, g);
    }
    return st;
}

Element Element::parse(std::string_view w) { return Element(reduce(w)); }

Element Element::generator(char c) {
    if (!is_letter(c)) throw std::invalid_argument("grig: invalid generator");
    return Element(std::string(1, c));
}

Element Element::operator*(const Element& rhs) const {
    std::string st = word_;
    for (char g : rhs.word_) push_reduced(st, g);
    return Element(std::move(st));
}

Element Element::inverse() const {
    std::string w(word_.rbegin(), word_.rend());
    return Element(std::move(w));  // reversal of a reduced word is reduced
}

Element Element::conj(const Element& by) const { return by.inverse() * *this * by; }

bool Element::operator==(const Element& rhs) const {
    if (word_ == rhs.word_) return true;
    return is_identity(*this * rhs.inverse());
}

bool root_swap(const Element& x) {
    return std::count(x.word().begin(), x.word().end(), 'a') % 2 != 0;
}

Sections sections(const Element& x) {
    std::string s0, s1;
    char c0 = '0', c1 = '1';
    bool swap = false;
    for (char g : x.word()) {
        if (g == 'a') {
            swap = !swap;
            c0 = c0 == '0' ? '1' : '0';
            c1 = c1 == '0' ? '1' : '0';
            continue;
        }
        if (char s = sec_of(g, c0)) s0.push_back(s);
        if (char s = sec_of(g, c1)) s1.push_back(s);
    }
    return Sections{swap, Element::parse(s0), Element::parse(s1)};
}

Element section_at(const Element& x, std::string_view path) {
    Element cur = x;
    for (char bit : path) {
        Sections s = sections(cur);
        cur = bit == '0' ? s.left : s.right;
    }
    return cur;
}

// --- is_identity memo cache ------------------------------------------------

namespace {

class LruCache {
public:
    explicit LruCache(std::size_t cap) : cap_(cap) {}

    void set_capacity(std::size_t cap) {
        cap_ = cap;
        shrink();
    }
    std::size_t capacity() const { return cap_; }

    const bool* find(const std::string& w) {
        auto it = map_.find(w);
        if (it == map_.end()) return nullptr;
        order_.splice(order_.begin(), order_, it->second.second);
        return &it->second.first;
    }

    void insert(const std::string& w, bool v) {
        auto it = map_.find(w);
        if (it != map_.end()) return;
        order_.push_front(w);
        map_.emplace(w, std::make_pair(v, order_.begin()));
        shrink();
    }

private:
    void shrink() {
        while (map_.size() > cap_ && !order_.empty()) {
            map_.erase(order_.back());
            order_.pop_back();
        }
    }

    std::size_t cap_;
    std::list<std::string> order_;
    std::unordered_map<std::string, std::pair<bool, std::list<std::string>::iterator>> map_;
};

std::size_t initial_cache_capacity() {
    if (const char* env = std::getenv("GRIGROW_CACHE")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{1} << 20;
}

LruCache& identity_cache() {
    thread_local LruCache cache(initial_cache_capacity());
    return cache;
}

bool is_identity_word(const std::string& w) {
    if (w.empty()) return true;
    if (w.size() == 1) return false;
    if (const bool* hit = identity_cache().find(w)) return *hit;
    Element e = Element::parse(w);
    bool result;
    if (root_swap(e)) {
        result = false;
    } else {
        Sections s = sections(e);
        result = is_identity_word(s.left.word()) && is_identity_word(s.right.word());
    }
    identity_cache().insert(w, result);
    return result;
}

}  // namespace

void set_identity_cache_capacity(std::size_t entries) {
    identity_cache().set_capacity(entries == 0 ? 1 : entries);
}

std::size_t identity_cache_capacity() { return identity_cache().capacity(); }

bool is_identity(const Element& x) { return is_identity_word(x.word()); }

// --- boundary action -------------------------------------------------------

std::string act_prefix(const Element& x, std::string_view w) {
    std::string out;
    out.reserve(w.size());
    Element state = x;
    for (char bit : w) {
        if (bit != '0' && bit != '1') throw std::invalid_argument("grig: prefix must be binary");
        Sections s = sections(state);
        char img = bit;
        if (s.root_swap) img = bit == '0' ? '1' : '0';
        out.push_back(img);
        state = bit == '0' ? s.left : s.right;
    }
    return out;
}

std::string act_ray(const Element& x, std::string_view prefix) {
    std::string out;
    Element state = x;
    std::size_t i = 0;
    for (;;) {
        bool consumed = i >= prefix.size();
        const std::string& sw = state.word();
        // b, c, d and the identity all fix the all-ones tail; once the prefix
        // is consumed and the remaining section is one of them, the output
        // tail is 1^inf.
        if (consumed && (sw.empty() || (sw.size() == 1 && sw[0] != 'a'))) break;
        char bit;
        if (!consumed) {
            bit = prefix[i++];
            if (bit != '0' && bit != '1')
                throw std::invalid_argument("grig: ray prefix must be binary");
        } else {
            bit = '1';
        }
        Sections s = sections(state);
        char img = bit;
        if (s.root_swap) img = bit == '0' ? '1' : '0';
        out.push_back(img);
        state = bit == '0' ? s.left : s.right;
    }
    while (!out.empty() && out.back() == '1') out.pop_back();
    return out;
}

Element sigma_endo(const Element& x) {
    std::string w;
    w.reserve(3 * x.length());
    for (char g : x.word()) {
        switch (g) {
            case 'a': w += 'c'; break;
            case 'b': w += "ada"; break;
            case 'c': w += "aba"; break;
            case 'd': w += "aca"; break;
        }
    }
    return Element::parse(w);
}

// --- tail classification ---------------------------------------------------

unsigned default_probe_depth(const Element& x) {
    return static_cast<unsigned>(2 * x.length() + 8);
}

TailBehavior tail_class(const Element& x, unsigned probe_depth) {
    Element s = x;
    unsigned level = 0;
    while (!(s.trivial_word() || s.word() == "d")) {
        if (level >= probe_depth)
            throw std::runtime_error("grig: tail_class probe_depth too small");
        s = sections(s).left;
        ++level;
    }
    TailBehavior tb;
    tb.level = level;
    std::string zeros(level, '0');
    tb.kind = act_prefix(x, zeros) == zeros ? TailKind::FixesTail : TailKind::MovesOffSequence;
    for (unsigned k = 0; k <= level; ++k) {
        std::string img = act_ray(x, std::string(k, '0'));
        if (img.find('1') == std::string::npos) {  // image is x_l with l = |img|
            unsigned l = static_cast<unsigned>(img.size());
            if (l != k) tb.exceptions.emplace_back(k, l);
        }
    }
    return tb;
}

// --- canonical keys ----------------------------------------------------------

unsigned signature_depth_for_length(std::size_t len) {
    unsigned d = 0;
    std::size_t v = 1;
    while (v < std::max<std::size_t>(len, 1)) {
        v <<= 1;
        ++d;
    }
    return d + 3;
}

namespace {
void portrait_rec(const Element& x, unsigned depth, std::string& out) {
    if (depth == 0) return;
    Sections s = sections(x);
    out.push_back(s.root_swap ? '1' : '0');
    portrait_rec(s.left, depth - 1, out);
    portrait_rec(s.right, depth - 1, out);
}
}  // namespace

std::string action_signature(const Element& x, unsigned depth) {
    std::string out;
    out.reserve((std::size_t{1} << depth));
    portrait_rec(x, depth, out);
    return out;
}

std::optional<Element> shortlex_canonical(const Element& x, std::size_t budget) {
    if (x.trivial_word()) return Element();
    unsigned depth = signature_depth_for_length(2 * x.length());
    std::string target = action_signature(x, depth);
    // enumerate reduced words in shortlex order, lengths 1..|x|
    std::vector<std::string> frontier = {""};
    std::size_t tried = 0;
    for (std::size_t len = 1; len <= x.length(); ++len) {
        std::vector<std::string> next;
        for (const std::string& w : frontier) {
            for (char g : {'a', 'b', 'c', 'd'}) {
                if (!w.empty() && ((w.back() == 'a') == (g == 'a'))) continue;
                std::string nw = w + g;
                if (++tried > budget) return std::nullopt;
                if (action_signature(Element::parse(nw), depth) == target)
                    return Element::parse(nw);
                next.push_back(std::move(nw));
            }
        }
        frontier = std::move(next);
    }
    return x;  // x itself is already minimal (no shorter or lex-smaller equal word)
}

}  // namespace grigrow::grig
