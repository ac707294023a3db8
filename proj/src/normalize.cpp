#include "gconv/normalize.hpp"

#include <algorithm>

namespace gconv {

namespace {

Expression normalize_node(Expression e) {
    switch (e.kind()) {
    case Kind::Sequence: {
        std::vector<Expression> parts;
        for (auto & c : e.children()) {
            if (c.kind() == Kind::Sequence)
                parts.insert(parts.end(), c.children().begin(), c.children().end());
            else if (c.kind() != Kind::Epsilon)
                parts.push_back(c);
        }
        if (parts.empty())
            return epsilon();
        if (parts.size() == 1)
            return parts.front();
        return sequence(std::move(parts));
    }
    case Kind::Choice: {
        std::vector<Expression> branches;
        auto add = [&](const Expression & b) {
            if (b.kind() == Kind::Fail)
                return;
            if (std::find(branches.begin(), branches.end(), b) == branches.end())
                branches.push_back(b);
        };
        for (auto & c : e.children()) {
            if (c.kind() == Kind::Choice)
                for (auto & cc : c.children())
                    add(cc);
            else
                add(c);
        }
        if (branches.empty())
            return fail();
        if (branches.size() == 1)
            return branches.front();
        return choice(std::move(branches));
    }
    case Kind::Optional:
    case Kind::Plus:
    case Kind::Star:
        if (e.body().kind() == Kind::Epsilon)
            return epsilon();
        return e;
    default:
        return e;
    }
}

} // namespace

//===========================================================================
Expression normalize(const Expression & e) {
    // Children are already normal when a node is visited, and each node rule
    // only splices normal children, so a single bottom-up pass reaches the
    // fixpoint.
    return rewrite(e, [](Expression x) { return normalize_node(std::move(x)); });
}

//===========================================================================
bool equal(const Expression & a, const Expression & b) {
    return normalize(a) == normalize(b);
}

//===========================================================================
bool is_normalized(const Expression & e) {
    return normalize(e) == e;
}

} // namespace gconv
