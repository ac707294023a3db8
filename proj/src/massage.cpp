#include "gconv/massage.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/normalize.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace gconv {

namespace {

std::size_t add(std::size_t a, std::size_t b) {
    if (a == kUnbounded || b == kUnbounded)
        return kUnbounded;
    return a + b;
}

std::size_t mul(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0)
        return 0;
    if (a == kUnbounded || b == kUnbounded)
        return kUnbounded;
    return a * b;
}

// Canonical term. Epsilon is an empty Seq.
struct Canon {
    enum class Tag { Atom, Seq, Alt, Rep, Sel } tag = Tag::Seq;
    Expression atom;
    std::string selector;
    std::vector<Canon> kids;
    std::size_t lo = 1;
    std::size_t hi = 1;

    bool is_eps() const { return tag == Tag::Seq && kids.empty(); }

    friend bool operator==(const Canon &, const Canon &) = default;
};

Canon eps_canon() { return Canon{}; }

Canon atom(const Expression & e) {
    Canon c;
    c.tag = Canon::Tag::Atom;
    c.atom = e;
    return c;
}

struct Counted {
    Canon base;
    std::size_t lo;
    std::size_t hi;
};

Counted counted(const Canon & c) {
    if (c.tag == Canon::Tag::Rep)
        return {c.kids.front(), c.lo, c.hi};
    return {c, 1, 1};
}

// base repeated a..b times, with nested intervals merged when the set of
// counts stays contiguous.
Canon rep(Canon base, std::size_t a, std::size_t b) {
    if (base.is_eps() || (a == 0 && b == 0))
        return eps_canon();
    if (a == 1 && b == 1)
        return base;
    if (base.tag == Canon::Tag::Rep) {
        std::size_t lo = base.lo, hi = base.hi;
        bool contiguous;
        if (a == b)
            contiguous = true;
        else if (hi == kUnbounded)
            contiguous = a >= 1 || lo <= 1;
        else
            contiguous = lo <= add(mul(a, hi - lo), 1);
        if (contiguous) {
            Canon inner = base.kids.front();
            return rep(std::move(inner), mul(a, lo), mul(b, hi));
        }
    }
    Canon c;
    c.tag = Canon::Tag::Rep;
    c.kids.push_back(std::move(base));
    c.lo = a;
    c.hi = b;
    return c;
}

Canon canon(const Expression & e);

Canon seq_canon(const std::vector<Canon> & parts) {
    std::vector<Canon> items;
    for (auto & p : parts) {
        if (p.tag == Canon::Tag::Seq)
            items.insert(items.end(), p.kids.begin(), p.kids.end());
        else
            items.push_back(p);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        // Neighbours over the same base add their bounds.
        for (std::size_t i = 0; i + 1 < items.size(); ++i) {
            auto a = counted(items[i]);
            auto b = counted(items[i + 1]);
            if (a.base == b.base && (items[i].tag == Canon::Tag::Rep || items[i + 1].tag == Canon::Tag::Rep)) {
                items[i] = rep(a.base, add(a.lo, b.lo), add(a.hi, b.hi));
                items.erase(items.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                changed = true;
                break;
            }
        }
        if (changed)
            continue;
        // A repeated sequence absorbs a spelled-out copy next to it.
        for (std::size_t i = 0; i < items.size() && !changed; ++i) {
            if (items[i].tag != Canon::Tag::Rep)
                continue;
            auto & base = items[i].kids.front();
            if (base.tag != Canon::Tag::Seq || base.kids.empty())
                continue;
            std::size_t n = base.kids.size();
            auto matches = [&](std::size_t from) {
                for (std::size_t k = 0; k < n; ++k)
                    if (!(items[from + k] == base.kids[k]))
                        return false;
                return true;
            };
            if (i >= n && matches(i - n)) {
                items[i] = rep(base, add(items[i].lo, 1), add(items[i].hi, 1));
                items.erase(items.begin() + static_cast<std::ptrdiff_t>(i - n),
                            items.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            } else if (i + n < items.size() && matches(i + 1)) {
                items[i] = rep(base, add(items[i].lo, 1), add(items[i].hi, 1));
                items.erase(items.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            items.begin() + static_cast<std::ptrdiff_t>(i + 1 + n));
                changed = true;
            }
        }
    }

    if (items.size() == 1)
        return items.front();
    Canon c;
    c.tag = Canon::Tag::Seq;
    c.kids = std::move(items);
    return c;
}

Canon alt_canon(const std::vector<Canon> & parts) {
    std::vector<Canon> branches;
    bool nillable = false;
    std::function<void(const Canon &)> push = [&](const Canon & c) {
        if (c.tag == Canon::Tag::Atom && c.atom.kind() == Kind::Fail)
            return;
        if (c.tag == Canon::Tag::Alt) {
            for (auto & k : c.kids)
                push(k);
            return;
        }
        // Optionality moves out of the choice: eps | x* | y is (x+ | y)?.
        if (c.is_eps()) {
            nillable = true;
            return;
        }
        if (c.tag == Canon::Tag::Rep && c.lo == 0) {
            nillable = true;
            push(rep(c.kids.front(), 1, c.hi));
            return;
        }
        if (std::find(branches.begin(), branches.end(), c) == branches.end())
            branches.push_back(c);
    };
    for (auto & p : parts)
        push(p);

    bool changed = true;
    while (changed && branches.size() > 1) {
        changed = false;
        // s1::x | s2::x | ... over one body is the body itself.
        if (std::all_of(branches.begin(), branches.end(), [&](auto & b) {
                return b.tag == Canon::Tag::Sel && b.kids.front() == branches.front().kids.front();
            })) {
            Canon body = branches.front().kids.front();
            branches.clear();
            push(body);
            changed = true;
            continue;
        }
        for (std::size_t i = 0; i < branches.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < branches.size() && !changed; ++j) {
                auto a = counted(branches[i]);
                auto b = counted(branches[j]);
                if (!(a.base == b.base))
                    continue;
                std::size_t lo = std::min(a.lo, b.lo);
                std::size_t hi = std::max(a.hi, b.hi);
                bool contiguous = std::max(a.lo, b.lo) <= add(std::min(a.hi, b.hi), 1);
                if (!contiguous)
                    continue;
                branches[i] = rep(a.base, lo, hi);
                branches.erase(branches.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
            }
        }
        // A branch inside x+ (or x+ over a choice holding it) is redundant.
        for (std::size_t i = 0; i < branches.size() && !changed; ++i) {
            auto & r = branches[i];
            if (r.tag != Canon::Tag::Rep || r.lo != 1)
                continue;
            auto & base = r.kids.front();
            for (std::size_t j = 0; j < branches.size() && !changed; ++j) {
                if (j == i)
                    continue;
                bool inside = base == branches[j]
                    || (base.tag == Canon::Tag::Alt
                        && std::find(base.kids.begin(), base.kids.end(), branches[j]) != base.kids.end());
                if (inside) {
                    branches.erase(branches.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                }
            }
        }
        if (changed) {
            // Merged branches may now coincide.
            std::vector<Canon> dedup;
            for (auto & b : branches)
                if (std::find(dedup.begin(), dedup.end(), b) == dedup.end())
                    dedup.push_back(b);
            branches = std::move(dedup);
        }
    }

    Canon c;
    if (branches.empty())
        c = nillable ? eps_canon() : atom(fail());
    else if (branches.size() == 1)
        c = branches.front();
    else {
        c.tag = Canon::Tag::Alt;
        c.kids = std::move(branches);
    }
    return nillable ? rep(std::move(c), 0, 1) : c;
}

Canon canon(const Expression & e) {
    switch (e.kind()) {
    case Kind::Epsilon:
        return eps_canon();
    case Kind::Selectable: {
        Canon c;
        c.tag = Canon::Tag::Sel;
        c.selector = e.text();
        c.kids.push_back(canon(e.body()));
        return c;
    }
    case Kind::Optional:
        return rep(canon(e.body()), 0, 1);
    case Kind::Plus:
        return rep(canon(e.body()), 1, kUnbounded);
    case Kind::Star:
        return rep(canon(e.body()), 0, kUnbounded);
    case Kind::Sequence: {
        std::vector<Canon> parts;
        for (auto & c : e.children())
            parts.push_back(canon(c));
        return seq_canon(parts);
    }
    case Kind::Choice: {
        std::vector<Canon> parts;
        for (auto & c : e.children())
            parts.push_back(canon(c));
        return alt_canon(parts);
    }
    default:
        return atom(e);
    }
}

void print(std::ostream & os, const Canon & c) {
    switch (c.tag) {
    case Canon::Tag::Atom:
        os << to_text(c.atom);
        break;
    case Canon::Tag::Sel:
        os << c.selector << "::";
        print(os, c.kids.front());
        break;
    case Canon::Tag::Rep:
        os << '{';
        print(os, c.kids.front());
        os << "}[" << c.lo << ',';
        if (c.hi == kUnbounded)
            os << "inf";
        else
            os << c.hi;
        os << ']';
        break;
    case Canon::Tag::Seq:
    case Canon::Tag::Alt: {
        os << (c.tag == Canon::Tag::Seq ? "seq(" : "alt(");
        for (std::size_t i = 0; i < c.kids.size(); ++i) {
            if (i)
                os << ", ";
            print(os, c.kids[i]);
        }
        os << ')';
        break;
    }
    }
}

} // namespace

//===========================================================================
RepetitionInterval interval_of(const Expression & e) {
    Expression n = normalize(e);
    switch (n.kind()) {
    case Kind::Optional: return {n.body(), 0, 1};
    case Kind::Plus: return {n.body(), 1, kUnbounded};
    case Kind::Star: return {n.body(), 0, kUnbounded};
    default: return {n, 1, 1};
    }
}

bool strictly_narrower(const RepetitionInterval & a, const RepetitionInterval & b) {
    if (!(a.base == b.base))
        return false;
    bool subset = b.low <= a.low && a.high <= b.high;
    return subset && !(a.low == b.low && a.high == b.high);
}

//===========================================================================
bool massage_equal(const Expression & x, const Expression & y) {
    return canon(normalize(x)) == canon(normalize(y));
}

std::string massage_canonical(const Expression & e) {
    std::ostringstream os;
    print(os, canon(normalize(e)));
    return os.str();
}

} // namespace gconv
