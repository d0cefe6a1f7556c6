#include "cotopo/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cotopo {

namespace {

PatternRule::Order parse_order(const std::string& tok, int line_no) {
    PatternRule::Order o;
    std::size_t pos;
    if ((pos = tok.find("<=")) != std::string::npos) o.rel = -1;
    else if ((pos = tok.find(">=")) != std::string::npos) o.rel = +1;
    else if ((pos = tok.find('=')) != std::string::npos) o.rel = 0;
    else throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                  ": bad order constraint '" + tok + "'");
    o.i = std::stoi(tok.substr(0, pos));
    o.j = std::stoi(tok.substr(pos + (o.rel == 0 ? 1 : 2)));
    if (o.i < 0 || o.i >= kRingSize || o.j < 0 || o.j >= kRingSize)
        throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                 ": order index out of range");
    return o;
}

PatternRule parse_rule(std::istringstream& ls, int line_no) {
    PatternRule rule;
    for (int i = 0; i < kRingSize; ++i) {
        std::string tok;
        if (!(ls >> tok))
            throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                     ": rule needs 8 entries");
        if (tok == "*") rule.entry[size_t(i)] = PatternRule::kFree;
        else if (tok == "0") rule.entry[size_t(i)] = PatternRule::kZero;
        else {
            bool neg = tok[0] == '-';
            std::string name = neg ? tok.substr(1) : tok;
            if (name.size() != 1 || name[0] < 'a' || name[0] > 'z')
                throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                         ": bad entry '" + tok + "'");
            int id = name[0] - 'a' + 1;
            rule.entry[size_t(i)] = neg ? -id : id;
        }
    }
    std::string tok;
    int section = 0;  // 0: expect '|' or end, 1: signs, 2: orders
    while (ls >> tok) {
        if (tok == "|") {
            ++section;
            continue;
        }
        if (section == 1) {
            if (tok.size() != kRingSize)
                throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                         ": sign row needs 8 characters");
            for (int i = 0; i < kRingSize; ++i)
                rule.sign[size_t(i)] = tok[size_t(i)] == '+' ? 1 : tok[size_t(i)] == '-' ? -1 : 0;
        } else if (section == 2) {
            rule.orders.push_back(parse_order(tok, line_no));
        } else {
            throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                     ": unexpected token '" + tok + "'");
        }
    }
    return rule;
}

}  // namespace

PatternSet parse_patterns(std::istream& in) {
    PatternSet out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "type") {
            PatternEntry e;
            std::string dim;
            if (!(ls >> e.type_id >> dim) || (dim != "dim2" && dim != "dim1"))
                throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                         ": expected 'type <id> dim2|dim1'");
            e.dim = dim == "dim2" ? 2 : 1;
            out.entries.push_back(std::move(e));
        } else if (head == "stratum") {
            PatternEntry e;
            e.is_stratum = true;
            e.dim = 0;
            std::string card;
            if (!(ls >> e.key >> card >> e.expected_cardinality) || card != "card")
                throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                         ": expected 'stratum <key> card <n>'");
            out.entries.push_back(std::move(e));
        } else if (head == "rule") {
            if (out.entries.empty())
                throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                         ": rule before any type/stratum");
            out.entries.back().rules.push_back(parse_rule(ls, line_no));
        } else {
            throw std::runtime_error("pattern file line " + std::to_string(line_no) +
                                     ": unknown directive '" + head + "'");
        }
    }
    return out;
}

const PatternSet& default_patterns() {
    static const PatternSet patterns = [] {
        std::istringstream in(embedded_pattern_text());
        return parse_patterns(in);
    }();
    return patterns;
}

namespace {

double shifted_rule_residual(const PatternRule& rule, const TorsionSequence& s, int shift) {
    std::array<double, kRingSize> f;
    for (int i = 0; i < kRingSize; ++i) f[size_t(i)] = s[(i + shift) % kRingSize];

    double worst = 0.0;
    // variable unification: all signed occurrences of a variable must agree
    for (int var = 1; var <= 26; ++var) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int i = 0; i < kRingSize; ++i) {
            int e = rule.entry[size_t(i)];
            if (e == var || e == -var) {
                double v = e > 0 ? f[size_t(i)] : -f[size_t(i)];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (hi > lo) worst = std::max(worst, hi - lo);
    }
    for (int i = 0; i < kRingSize; ++i) {
        if (rule.entry[size_t(i)] == PatternRule::kZero)
            worst = std::max(worst, std::abs(f[size_t(i)]));
        if (rule.sign[size_t(i)] > 0) worst = std::max(worst, -f[size_t(i)]);
        if (rule.sign[size_t(i)] < 0) worst = std::max(worst, f[size_t(i)]);
    }
    for (const auto& o : rule.orders) {
        double diff = f[size_t(o.i)] - f[size_t(o.j)];
        if (o.rel == -1) worst = std::max(worst, diff);
        else if (o.rel == +1) worst = std::max(worst, -diff);
        else worst = std::max(worst, std::abs(diff));
    }
    return worst;
}

}  // namespace

double rule_residual(const PatternRule& rule, const TorsionSequence& s) {
    double best = std::numeric_limits<double>::infinity();
    for (int shift = 0; shift < kRingSize; ++shift)
        best = std::min(best, shifted_rule_residual(rule, s, shift));
    return best;
}

SymmetryLabel classify(const TorsionSequence& s, const ToleranceConfig& tol,
                       const PatternSet& patterns) {
    SymmetryLabel label;
    label.type1_residual = std::numeric_limits<double>::infinity();
    for (const auto& entry : patterns.entries) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& rule : entry.rules) best = std::min(best, rule_residual(rule, s));
        if (!entry.is_stratum && entry.type_id == 1) label.type1_residual = best;
        if (best <= tol.for_dim(entry.dim)) {
            if (entry.is_stratum) label.strata0.insert(entry.key);
            else label.types.insert(entry.type_id);
        }
    }
    if (!label.has(1)) label.types.insert(2);
    return label;
}

std::vector<int> subspace_indices(const std::vector<SymmetryLabel>& labels,
                                  const std::set<int>& selector, SubspaceMode mode,
                                  const ToleranceConfig& tol, double closure_floor) {
    if (closure_floor < 0.0) closure_floor = tol.tol_2d / 5.0;
    std::vector<int> out;
    for (int i = 0; i < int(labels.size()); ++i) {
        const SymmetryLabel& l = labels[size_t(i)];
        bool keep = false;
        for (int t : l.types)
            if (selector.count(t)) { keep = true; break; }
        // closure: a point whose period-4 match only holds by tolerance sits
        // on (or next to) the boundary of the complement of type 1
        if (!keep && mode == SubspaceMode::closure && l.type1_residual > closure_floor)
            keep = true;
        if (keep) out.push_back(i);
    }
    return out;
}

std::vector<int> subspace_A(const std::vector<SymmetryLabel>& labels, const ToleranceConfig& tol) {
    return subspace_indices(labels, {3, 4}, SubspaceMode::any, tol);
}

std::vector<int> subspace_B(const std::vector<SymmetryLabel>& labels, const ToleranceConfig&) {
    std::vector<int> out;
    for (int i = 0; i < int(labels.size()); ++i) {
        const SymmetryLabel& l = labels[size_t(i)];
        if (l.has(1) && !l.has(3) && !l.has(4)) out.push_back(i);
    }
    return out;
}

std::vector<int> subspace_C(const std::vector<SymmetryLabel>& labels, const ToleranceConfig& tol) {
    return subspace_indices(labels, {2}, SubspaceMode::closure, tol);
}

Hemisphere hemisphere_split(const TorsionSequence& s, const ToleranceConfig& tol) {
    double even = s[0] + s[2] + s[4] + s[6];
    double odd = s[1] + s[3] + s[5] + s[7];
    double diff = even - odd;
    if (std::abs(diff) <= tol.tol_1d) return Hemisphere::boundary;
    return diff > 0 ? Hemisphere::first : Hemisphere::second;
}

}  // namespace cotopo
