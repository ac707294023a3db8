#include "gconv/comparator.hpp"

#include "gconv/bgf_text.hpp"
#include "gconv/normalize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gconv {

//===========================================================================
std::vector<Expression> alternatives(const Grammar & g, const std::string & name) {
    std::vector<Expression> out;
    // The definition is the union of its productions: a branch repeated
    // across productions counts once, as it would in a single choice.
    auto add = [&](const Expression & e) {
        auto & alt = e.kind() == Kind::Selectable ? e.body() : e;
        if (std::find(out.begin(), out.end(), alt) == out.end())
            out.push_back(alt);
    };
    for (auto i : definition_of(g, name)) {
        Expression rhs = normalize(g.productions[i].rhs);
        if (rhs.kind() == Kind::Choice)
            for (auto & b : rhs.children())
                add(b);
        else
            add(rhs);
    }
    return out;
}

//===========================================================================
DifferenceReport compare(const Grammar & left, const Grammar & right) {
    DifferenceReport r;

    auto ldefs = defined_names(left);
    auto rdefs = defined_names(right);
    std::set<std::string> ldef(ldefs.begin(), ldefs.end());
    std::set<std::string> rdef(rdefs.begin(), rdefs.end());
    auto uses = [](const Grammar & g) {
        auto u = used_names(g);
        std::set<std::string> s(u.begin(), u.end());
        s.insert(g.roots.begin(), g.roots.end());
        return s;
    };
    auto luse = uses(left);
    auto ruse = uses(right);

    std::set<std::string> universe = ldef;
    universe.insert(rdef.begin(), rdef.end());

    for (auto & name : universe) {
        auto check = [&](Side side, const std::set<std::string> & def, const std::set<std::string> & use,
                         const std::set<std::string> & other_use) {
            if (!def.count(name))
                r.nominal.push_back({side, name, NominalKind::MissingDefinition});
            else if (other_use.count(name) && !use.count(name))
                r.nominal.push_back({side, name, NominalKind::MissingReference});
        };
        check(Side::Left, ldef, luse, ruse);
        check(Side::Right, rdef, ruse, luse);
    }
    std::stable_sort(r.nominal.begin(), r.nominal.end(), [](auto & a, auto & b) {
        return a.side < b.side;
    });

    for (auto & name : ldefs) {
        if (!rdef.count(name))
            continue;
        auto la = alternatives(left, name);
        auto ra = alternatives(right, name);
        std::vector<bool> taken(ra.size(), false);
        StructuralDifference d;
        d.name = name;
        for (auto & a : la) {
            bool matched = false;
            for (std::size_t j = 0; j < ra.size(); ++j) {
                if (!taken[j] && ra[j] == a) {
                    taken[j] = true;
                    matched = true;
                    break;
                }
            }
            if (!matched)
                d.unmatched_left.push_back(a);
        }
        for (std::size_t j = 0; j < ra.size(); ++j)
            if (!taken[j])
                d.unmatched_right.push_back(ra[j]);
        d.weight = std::max(d.unmatched_left.size(), d.unmatched_right.size());
        if (d.weight > 0)
            r.structural.push_back(std::move(d));
    }

    r.nominal_count = r.nominal.size();
    for (auto & d : r.structural)
        r.structural_count += d.weight;
    return r;
}

std::size_t total_differences(const DifferenceReport & r) {
    return r.nominal_count + r.structural_count;
}

//===========================================================================
std::string render(const DifferenceReport & r, const std::string & left_name,
                   const std::string & right_name) {
    std::ostringstream os;
    auto side = [&](Side s) { return s == Side::Left ? left_name : right_name; };
    os << "nominal:\n";
    for (auto & d : r.nominal)
        os << "  " << side(d.side) << ' ' << d.name << " ("
           << (d.kind == NominalKind::MissingDefinition ? "definition" : "reference") << ")\n";
    os << "structural:\n";
    for (auto & d : r.structural) {
        os << "  " << d.name << " (" << d.weight << ")\n";
        auto list = [&](const std::string & who, const std::vector<Expression> & alts) {
            if (alts.empty())
                os << "    " << who << ": none\n";
            for (auto & a : alts)
                os << "    " << who << ": " << to_spaced_text(a) << '\n';
        };
        list(left_name, d.unmatched_left);
        list(right_name, d.unmatched_right);
    }
    os << "total: " << total_differences(r) << '\n';
    return os.str();
}

} // namespace gconv
