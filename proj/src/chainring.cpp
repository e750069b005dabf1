#include "ringkit/chainring.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace ringkit {

namespace {

const CyclicInterval& single_arc(const IntervalSet& s) {
    if (s.is_full() || s.arcs().size() != 1)
        throw std::domain_error("support is not a single open arc");
    return s.arcs()[0];
}

std::pair<Rational, Rational> arc_line_bounds(const CyclicInterval& arc) {
    if (arc.is_punctured_circle()) {
        if (arc.lower() != CirclePoint())
            throw std::domain_error("support wraps past the basepoint");
        return {Rational(0), Rational(1)};
    }
    const Rational lo = arc.lower().value();
    const Rational hi = arc.upper() == CirclePoint() ? Rational(1) : arc.upper().value();
    if (!(lo < hi)) throw std::domain_error("support wraps past the basepoint");
    return {lo, hi};
}

// Pointwise application of f^e, staying exact; |e| evaluations.
Rational apply_power(const PLMap& f, long e, const Rational& x) {
    Rational cur = x;
    for (long s = 0; s < (e > 0 ? e : -e); ++s)
        cur = e > 0 ? f.lift_eval(cur) : f.lift_eval_inverse(cur);
    return cur;
}

Word normalize_word(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (l.exponent == 0) continue;
        if (!out.empty() && out.back().index == l.index) {
            out.back().exponent += l.exponent;
            if (out.back().exponent == 0) out.pop_back();
            continue;
        }
        out.push_back(l);
    }
    return out;
}

}  // namespace

GeneratingFamily::GeneratingFamily(FamilyContext context, std::vector<PLMap> generators)
    : ctx_(context), gens_(std::move(generators)) {
    if (gens_.empty()) throw std::domain_error("family needs at least one generator");
    supports_.reserve(gens_.size());
    for (const auto& g : gens_) {
        if (ctx_ == FamilyContext::line && g.kind() != MapKind::interval)
            throw std::domain_error("line-context generators must fix the basepoint");
        IntervalSet s = ringkit::support(g);
        single_arc(s);
        supports_.push_back(std::move(s));
    }
}

std::pair<Rational, Rational> GeneratingFamily::line_support(std::size_t i) const {
    return arc_line_bounds(single_arc(supports_[i]));
}

std::string word_str(const Word& w) {
    std::string out;
    for (const auto& l : w) {
        if (!out.empty()) out += ' ';
        out += 'f' + std::to_string(l.index + 1);
        if (l.exponent != 1) out += '^' + std::to_string(l.exponent);
    }
    return out;
}

Word word_parse(const std::string& text, std::size_t family_size) {
    Word out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2 || tok[0] != 'f')
            throw std::invalid_argument("bad word token: " + tok);
        const auto caret = tok.find('^');
        long idx = 0, exp = 1;
        try {
            idx = std::stol(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
            if (caret != std::string::npos) exp = std::stol(tok.substr(caret + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad word token: " + tok);
        }
        if (idx < 1 || static_cast<std::size_t>(idx) > family_size)
            throw std::invalid_argument("word references generator out of range: " + tok);
        if (exp == 0) throw std::invalid_argument("zero exponent in word token: " + tok);
        out.push_back({static_cast<std::size_t>(idx - 1), exp});
    }
    return out;
}

long word_length(const Word& w) {
    long total = 0;
    for (const auto& l : w) total += l.exponent > 0 ? l.exponent : -l.exponent;
    return total;
}

std::vector<long> exponent_sums(const Word& w, std::size_t family_size) {
    std::vector<long> sums(family_size, 0);
    for (const auto& l : w) sums.at(l.index) += l.exponent;
    return sums;
}

PLMap word_to_map(const GeneratingFamily& fam, const Word& w) {
    PLMap acc = PLMap::identity();
    for (const auto& l : w) acc = compose(acc, power(fam.gen(l.index), l.exponent));
    return acc;
}

long p1(const GeneratingFamily& fam, const Word& w) {
    return exponent_sums(w, fam.size())[0];
}

P1Verdict p1_consistency(const GeneratingFamily& fam, const Word& w1, const Word& w2) {
    const bool eq = word_to_map(fam, w1) == word_to_map(fam, w2);
    const long a = p1(fam, w1), b = p1(fam, w2);
    return {eq, a, b, !eq || a == b};
}

bool is_chain(const std::vector<IntervalSet>& supports) {
    const std::size_t m = supports.size();
    if (m < 2) throw std::domain_error("a chain needs at least two intervals");
    for (const auto& s : supports) single_arc(s);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (set_difference(supports[i], supports[i + 1]).is_empty()) return false;
        if (set_difference(supports[i + 1], supports[i]).is_empty()) return false;
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 2; j < m; ++j)
            if (!disjoint(supports[i], supports[j])) return false;
    return true;
}

bool is_ring(const std::vector<IntervalSet>& supports) {
    const std::size_t m = supports.size();
    if (m < 3) throw std::domain_error("a ring needs at least three intervals");
    for (const auto& s : supports) single_arc(s);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = (i + 1) % m;
        if (set_difference(supports[i], supports[j]).is_empty()) return false;
        if (set_difference(supports[j], supports[i]).is_empty()) return false;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 2; j < m; ++j) {
            const std::size_t d = j - i;
            if (d >= 2 && d <= m - 2 && !disjoint(supports[i], supports[j])) return false;
        }
    }
    return true;
}

FPairCert certify_F_pair(const PLMap& f, const PLMap& g) {
    const auto [a, b] = arc_line_bounds(single_arc(support(f)));
    const auto [ap, bp] = arc_line_bounds(single_arc(support(g)));
    if (!(a < ap && ap < b && b < bp))
        throw std::domain_error("supports violate the overlap pattern a < a' < b < b'");
    const Rational value = g.lift_eval(f.lift_eval(ap));
    return {ap, b, value, value >= b, true, std::nullopt};
}

namespace {

FPairCert certify_status(const PLMap& f, const PLMap& g) {
    try {
        return certify_F_pair(f, g);
    } catch (const std::domain_error&) {
        return {Rational(0), Rational(0), Rational(0), false, false, std::nullopt};
    }
}

std::optional<PLMap> rotation_off_supports(const IntervalSet& a, const IntervalSet& b) {
    const IntervalSet gap = set_complement(set_union(a, b));
    if (gap.is_empty()) return std::nullopt;
    const CirclePoint z = gap.arcs().front().midpoint();
    return PLMap::rotation(-z.value());
}

FPairCert certify_with_transport(const PLMap& f, const PLMap& g,
                                 const std::optional<PLMap>& preferred) {
    FPairCert direct = certify_status(f, g);
    if (direct.pattern_ok) return direct;
    std::vector<PLMap> candidates;
    if (preferred) candidates.push_back(*preferred);
    if (auto rot = rotation_off_supports(support(f), support(g))) candidates.push_back(*rot);
    for (const auto& c : candidates) {
        FPairCert cert = certify_status(conjugate(c, f), conjugate(c, g));
        if (cert.pattern_ok) {
            cert.conjugator = c;
            return cert;
        }
    }
    return direct;  // pattern_ok = false
}

}  // namespace

RingCert verify_ring_group(const GeneratingFamily& fam, const std::optional<PLMap>& wrap_conjugator) {
    const std::size_t m = fam.size();
    if (m < 3) throw std::domain_error("a ring group needs at least three generators");
    RingCert out;
    out.ring = is_ring(fam.supports());
    out.certified = out.ring;
    for (std::size_t i = 0; i < m; ++i) {
        FPairCert cert = certify_with_transport(fam.gen(i), fam.gen((i + 1) % m), wrap_conjugator);
        if (!cert.certified && !out.failing_index) out.failing_index = i;
        out.certified = out.certified && cert.certified;
        out.pairs.push_back(std::move(cert));
    }
    return out;
}

namespace {

void require_prechain(const GeneratingFamily& fam) {
    if (fam.context() != FamilyContext::line)
        throw std::domain_error("prechain families live on the line");
    if (fam.size() < 2) throw std::domain_error("a prechain needs at least two generators");
    IntervalSet u;
    for (std::size_t i = 0; i < fam.size(); ++i) u = set_union(u, fam.support(i));
    const IntervalSet open_unit =
        IntervalSet::of_arc(CyclicInterval::punctured_circle(CirclePoint()));
    if (u != open_unit) throw std::domain_error("supports do not cover (0,1)");
    if (!is_chain(fam.supports())) throw std::domain_error("supports do not form a chain");
}

}  // namespace

StabilizeResult stabilize(const GeneratingFamily& fam, long Nmax) {
    require_prechain(fam);
    StabilizeResult res;
    res.largest_tried = std::max(0L, Nmax);
    for (long N = 1; N <= Nmax; ++N) {
        std::vector<PLMap> powered;
        powered.reserve(fam.size());
        for (std::size_t i = 0; i < fam.size(); ++i) {
            powered.push_back(power(fam.gen(i), N));
            if (support(powered.back()) != fam.support(i))
                throw std::domain_error("powering changed a support");
        }
        ChainCert cert{N, true, {}, true};
        for (std::size_t i = 0; i + 1 < powered.size(); ++i) {
            cert.pairs.push_back(certify_status(powered[i], powered[i + 1]));
            cert.certified = cert.certified && cert.pairs.back().certified;
        }
        if (cert.certified) {
            res.found = true;
            res.N = N;
            res.cert = std::move(cert);
            return res;
        }
    }
    return res;
}

std::vector<PLMap> expanded_generators(const GeneratingFamily& fam, long N) {
    const std::size_t m = fam.size();
    if (m < 4) throw std::domain_error("ring expansion requires an m-ring with m >= 4");
    if (N < 1) throw std::domain_error("expansion exponent must be positive");
    const PLMap& f1 = fam.gen(0);
    const PLMap& fm = fam.gen(m - 1);
    const PLMap& fm1 = fam.gen(m - 2);  // f_{m-1}
    const PLMap& fm2 = fam.gen(m - 3);  // f_{m-2}

    std::vector<PLMap> out(fam.generators().begin(), fam.generators().end());
    out.push_back(fm);                                                   // f'_{m+1} = f_m
    out[m - 1] = conjugate(power(compose(fm2, fm), N), power(fm1, N));   // f'_m
    out[m - 3] = conjugate(power(fm1, -N), fm2);                         // f'_{m-2}
    out[m - 2] = conjugate(inverse(out[m - 1]), fm1);                    // f'_{m-1}
    out[0] = conjugate(power(fm, N), f1);                                // f'_1
    return out;
}

ExpandResult expand_ring(const GeneratingFamily& fam, long Nmax,
                         const std::optional<PLMap>& wrap_conjugator) {
    const std::size_t m = fam.size();
    if (m < 4) throw std::domain_error("ring expansion requires an m-ring with m >= 4");
    if (!verify_ring_group(fam, wrap_conjugator).certified)
        throw std::domain_error("expansion input is not a certified ring group");

    ExpandResult res;
    res.largest_tried = std::max(0L, Nmax);
    for (long N = 1; N <= Nmax; ++N) {
        std::vector<PLMap> maps = expanded_generators(fam, N);
        std::optional<GeneratingFamily> next;
        try {
            next.emplace(FamilyContext::circle, maps);
        } catch (const std::domain_error&) {
            continue;  // some support split into several arcs; try a larger N
        }
        const auto& sup = next->supports();
        const auto arc = [&](std::size_t i) { return single_arc(sup[i]); };
        BoundaryCheck bc1{"boundary order supp(f'_{m+1}), supp(f'_m), supp(f'_1)",
                          {arc(m).lower(), arc(m - 1).upper(), arc(0).lower(), arc(m).upper()},
                          false, false};
        bc1.ok = cyclically_ordered_weak(bc1.points);
        bc1.strict = cyclically_ordered(bc1.points);
        BoundaryCheck bc2{"boundary order supp(f'_{m+1}), supp(f'_2), supp(f'_1)",
                          {arc(m).upper(), arc(1).lower(), arc(0).upper()},
                          false, false};
        bc2.ok = cyclically_ordered_weak(bc2.points);
        bc2.strict = cyclically_ordered(bc2.points);

        RingCert rc = verify_ring_group(*next);
        const bool ok = bc1.ok && bc2.ok && rc.certified;
        if (ok) {
            res.found = true;
            res.cert = ExpansionCert{N, std::move(maps), {bc1, bc2}, std::move(rc), true};
            return res;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Verified word searches on line-context families.

namespace {

class PushEngine {
public:
    PushEngine(const GeneratingFamily& fam, long budget) : fam_(fam), budget_(budget) {
        if (fam.context() != FamilyContext::line)
            throw std::domain_error("word searches require a line-context family");
        const std::size_t m = fam.size();
        a_.reserve(m);
        b_.reserve(m);
        dir_.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            auto [lo, hi] = fam.line_support(i);
            const Rational mid = (lo + hi) / Rational(2);
            dir_.push_back(fam.gen(i).lift_eval(mid) > mid ? 1 : -1);
            a_.push_back(std::move(lo));
            b_.push_back(std::move(hi));
        }
    }

    void set_interval(const Rational& lo, const Rational& hi) {
        lo_ = lo;
        hi_ = hi;
    }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    const std::vector<WordLetter>& applied() const { return applied_; }

    // Drives the interval into the open target (j_lo, j_hi) using the
    // attractor generator tau: its fixed boundary point t (upper or lower end
    // of its support) lies in the target, so the final approach converges
    // monotonically and cannot overshoot.
    void run_to_target(std::size_t tau, bool t_is_upper, const Rational& j_lo,
                       const Rational& j_hi) {
        if (inside(j_lo, j_hi)) return;
        if (t_is_upper) {
            while (!(hi_ < b_[tau])) step_left_on_hi();
            while (!(a_[tau] < lo_)) {
                if (!step_right_on_lo_guarded(b_[tau])) step_left_on_hi();
            }
            while (!(j_lo < lo_)) apply(tau, dir_[tau]);
        } else {
            while (!(a_[tau] < lo_)) step_right_on_lo();
            while (!(hi_ < b_[tau])) {
                if (!step_left_on_hi_guarded(a_[tau])) step_right_on_lo();
            }
            while (!(hi_ < j_hi)) apply(tau, -dir_[tau]);
        }
    }

    // Zero-sum closure: for every generator with nonzero exponent sum in the
    // applied word, a conjugated inverse block whose support has been moved
    // exactly off the final interval. Returns the full word in product order.
    Word closed_word() {
        const auto sums = applied_sums();
        Word product;
        for (std::size_t i = 0; i < fam_.size(); ++i) {
            if (sums[i] == 0) continue;
            const auto w = clear_arc(i);
            for (auto it = w.rbegin(); it != w.rend(); ++it) product.push_back(*it);
            product.push_back({i, -sums[i]});
            for (const auto& l : w) product.push_back({l.index, -l.exponent});
        }
        for (auto it = applied_.rbegin(); it != applied_.rend(); ++it) product.push_back(*it);
        return normalize_word(product);
    }

private:
    bool inside(const Rational& j_lo, const Rational& j_hi) const {
        return j_lo < lo_ && hi_ < j_hi;
    }

    std::vector<long> applied_sums() const {
        std::vector<long> sums(fam_.size(), 0);
        for (const auto& l : applied_) sums[l.index] += l.exponent;
        return sums;
    }

    void spend(long letters) {
        used_ += letters;
        if (used_ > budget_)
            throw BudgetError("word budget exhausted", lo_, hi_);
    }

    void apply(std::size_t i, long e) {
        spend(e > 0 ? e : -e);
        lo_ = apply_power(fam_.gen(i), e, lo_);
        hi_ = apply_power(fam_.gen(i), e, hi_);
        applied_.push_back({i, e});
    }

    // The image of x one letter to the left/right, over all generators whose
    // open support contains x.
    std::optional<std::pair<std::size_t, Rational>> best_move(const Rational& x, int want) const {
        std::optional<std::pair<std::size_t, Rational>> best;
        for (std::size_t i = 0; i < fam_.size(); ++i) {
            if (!(a_[i] < x && x < b_[i])) continue;
            const long e = want > 0 ? dir_[i] : -dir_[i];
            const Rational img = apply_power(fam_.gen(i), e, x);
            const bool better = !best || (want > 0 ? img > best->second : img < best->second);
            if (better) best = {i, img};
        }
        return best;
    }

    void step_left_on_hi() {
        const auto mv = best_move(hi_, -1);
        if (!mv) throw BudgetError("no generator can move the upper endpoint left", lo_, hi_);
        apply(mv->first, -dir_[mv->first]);
    }

    void step_right_on_lo() {
        const auto mv = best_move(lo_, +1);
        if (!mv) throw BudgetError("no generator can move the lower endpoint right", lo_, hi_);
        apply(mv->first, dir_[mv->first]);
    }

    bool step_right_on_lo_guarded(const Rational& hi_limit) {
        std::optional<std::size_t> pick;
        Rational pick_lo;
        for (std::size_t i = 0; i < fam_.size(); ++i) {
            if (!(a_[i] < lo_ && lo_ < b_[i])) continue;
            const long e = dir_[i];
            const Rational nlo = apply_power(fam_.gen(i), e, lo_);
            const Rational nhi = apply_power(fam_.gen(i), e, hi_);
            if (!(nhi < hi_limit)) continue;
            if (!pick || nlo > pick_lo) {
                pick = i;
                pick_lo = nlo;
            }
        }
        if (!pick) return false;
        apply(*pick, dir_[*pick]);
        return true;
    }

    bool step_left_on_hi_guarded(const Rational& lo_limit) {
        std::optional<std::size_t> pick;
        Rational pick_hi;
        for (std::size_t i = 0; i < fam_.size(); ++i) {
            if (!(a_[i] < hi_ && hi_ < b_[i])) continue;
            const long e = -dir_[i];
            const Rational nlo = apply_power(fam_.gen(i), e, lo_);
            const Rational nhi = apply_power(fam_.gen(i), e, hi_);
            if (!(lo_limit < nlo)) continue;
            if (!pick || nhi < pick_hi) {
                pick = i;
                pick_hi = nhi;
            }
        }
        if (!pick) return false;
        apply(*pick, -dir_[*pick]);
        return true;
    }

    // A word (application order) moving the support arc of generator i
    // entirely off the closed interval [lo_, hi_]; both arc endpoints are
    // tracked exactly.
    std::vector<WordLetter> clear_arc(std::size_t i) {
        Rational x = a_[i], y = b_[i];
        if (y < lo_ || hi_ < x) return {};
        // Try pushing the whole arc below the interval, then above it.
        for (int attempt = 0; attempt < 2; ++attempt) {
            const bool down = attempt == 0;
            Rational px = x, py = y;
            std::vector<WordLetter> w;
            bool ok = true;
            while (ok && (down ? !(py < lo_) : !(hi_ < px))) {
                const auto mv = best_move(down ? py : px, down ? -1 : +1);
                if (!mv) {
                    ok = false;
                    break;
                }
                const long e = down ? -dir_[mv->first] : dir_[mv->first];
                spend(2);  // the conjugating word is used twice in the block
                px = apply_power(fam_.gen(mv->first), e, px);
                py = apply_power(fam_.gen(mv->first), e, py);
                w.push_back({mv->first, e});
            }
            if (ok) return w;
            // refund the failed attempt
            used_ -= 2 * static_cast<long>(w.size());
        }
        throw BudgetError("cannot move a support off the target interval", lo_, hi_);
    }

    const GeneratingFamily& fam_;
    long budget_;
    long used_ = 0;
    Rational lo_, hi_;
    std::vector<WordLetter> applied_;
    std::vector<Rational> a_, b_;
    std::vector<int> dir_;
};

struct WordRun {
    std::vector<std::pair<Rational, Rational>> steps;
    Rational lo, hi;
};

// Applies the word to [lo, hi], recording the image after each syllable
// (rightmost syllable first, matching the action order).
WordRun run_word(const GeneratingFamily& fam, const Word& w, Rational lo, Rational hi) {
    WordRun out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        lo = apply_power(fam.gen(it->index), it->exponent, lo);
        hi = apply_power(fam.gen(it->index), it->exponent, hi);
        out.steps.emplace_back(lo, hi);
    }
    out.lo = lo;
    out.hi = hi;
    return out;
}

// Shared implementation: t_interior distinguishes the public shrink contract
// (t a support boundary point inside (0,1)) from the corner fallback used by
// displace, where the attractor end of the support may be 0 or 1.
ShrinkCert shrink_impl(const GeneratingFamily& fam, const Rational& i_lo, const Rational& i_hi,
                       std::size_t tau, bool t_is_upper, const Rational& j_lo,
                       const Rational& j_hi, long budget) {
    PushEngine eng(fam, budget);
    eng.set_interval(i_lo, i_hi);
    eng.run_to_target(tau, t_is_upper, j_lo, j_hi);
    const Word word = eng.closed_word();

    ShrinkCert cert;
    cert.word = word;
    cert.i_lo = i_lo;
    cert.i_hi = i_hi;
    cert.j_lo = j_lo;
    cert.j_hi = j_hi;
    WordRun run = run_word(fam, word, i_lo, i_hi);
    cert.steps = std::move(run.steps);
    cert.final_lo = run.lo;
    cert.final_hi = run.hi;
    cert.included = j_lo < cert.final_lo && cert.final_hi < j_hi;
    if (!cert.included)
        throw std::logic_error("zero-sum closure failed to preserve the image");
    for (long s : exponent_sums(word, fam.size()))
        if (s != 0) throw std::logic_error("closed word has a nonzero exponent sum");
    if (word_length(word) > budget)
        throw BudgetError("closed word exceeds the letter budget", cert.final_lo, cert.final_hi);
    return cert;
}

}  // namespace

ShrinkCert shrink_into(const GeneratingFamily& fam, const Rational& i_lo, const Rational& i_hi,
                       const Rational& t, const Rational& j_lo, const Rational& j_hi,
                       long budget) {
    if (!(Rational(0) < i_lo && i_lo <= i_hi && i_hi < Rational(1)))
        throw std::domain_error("I must be a closed interval inside (0,1)");
    if (!(Rational(0) <= j_lo && j_lo < t && t < j_hi && j_hi <= Rational(1)))
        throw std::domain_error("J must be an open neighborhood of t inside (0,1)");
    std::optional<std::size_t> tau;
    bool upper = true;
    for (std::size_t i = 0; i < fam.size() && !tau; ++i)
        if (fam.line_support(i).second == t) tau = i;
    if (!tau) {
        for (std::size_t i = 0; i < fam.size() && !tau; ++i)
            if (fam.line_support(i).first == t) {
                tau = i;
                upper = false;
            }
    }
    if (!tau) throw std::domain_error("t is not a boundary point of any generator support");
    if (t == Rational(0) || t == Rational(1))
        throw std::domain_error("t must be interior to (0,1)");
    return shrink_impl(fam, i_lo, i_hi, *tau, upper, j_lo, j_hi, budget);
}

DisplaceCert displace(const GeneratingFamily& fam, const Rational& i_lo, const Rational& i_hi,
                      long budget) {
    if (!(Rational(0) < i_lo && i_lo <= i_hi && i_hi < Rational(1)))
        throw std::domain_error("I must be a closed interval inside (0,1)");

    // Candidate targets: interior support boundary points away from I, then
    // the basepoint-side corners.
    struct Plan {
        std::size_t tau;
        bool upper;
        Rational j_lo, j_hi;
    };
    std::vector<Plan> plans;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto [a, b] = fam.line_support(i);
        for (int side = 0; side < 2; ++side) {
            const Rational t = side == 0 ? b : a;
            if (!(Rational(0) < t && t < Rational(1))) continue;
            const Rational gap = t < i_lo ? i_lo - t : (t > i_hi ? t - i_hi : Rational(0));
            if (gap == Rational(0)) continue;
            Rational r = gap / Rational(2);
            if (t - r < Rational(0)) r = t / Rational(2);
            if (t + r > Rational(1)) r = (Rational(1) - t) / Rational(2);
            plans.push_back({i, side == 0, t - r, t + r});
        }
    }
    // Corner fallbacks: push everything below I (attractor at the left end of
    // the leftmost support) or above it.
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto [a, b] = fam.line_support(i);
        if (a == Rational(0)) plans.push_back({i, false, Rational(0), i_lo});
        if (b == Rational(1)) plans.push_back({i, true, i_hi, Rational(1)});
    }

    std::optional<BudgetError> last;
    for (const auto& plan : plans) {
        try {
            ShrinkCert sc =
                shrink_impl(fam, i_lo, i_hi, plan.tau, plan.upper, plan.j_lo, plan.j_hi, budget);
            DisplaceCert out;
            out.word = sc.word;
            out.i_lo = i_lo;
            out.i_hi = i_hi;
            out.image_lo = sc.final_lo;
            out.image_hi = sc.final_hi;
            out.disjoint = sc.final_hi < i_lo || i_hi < sc.final_lo;
            if (out.disjoint) return out;
        } catch (const BudgetError& e) {
            last = e;
        }
    }
    if (last) throw *last;
    throw BudgetError("no displacement target available", i_lo, i_hi);
}

std::vector<Word> disjoint_pushers(const GeneratingFamily& fam, const IntervalSet& K, long k,
                                   long budget) {
    if (k < 1) throw std::domain_error("k must be positive");
    if (K.is_empty() || K.is_full())
        throw std::domain_error("K must be a nonempty proper interval set");
    Rational k_lo(1), k_hi(0);
    for (const auto& arc : K.arcs()) {
        const auto [lo, hi] = arc_line_bounds(arc);
        k_lo = std::min(k_lo, lo);
        k_hi = std::max(k_hi, hi);
    }
    if (!(Rational(0) < k_lo && k_hi < Rational(1)))
        throw std::domain_error("K must be compactly contained in (0,1)");
    if (k == 1) return {Word{}};

    // Deterministic targets: windows around the interior support boundary
    // points, radius one third of the gap to the neighboring targets.
    std::vector<Rational> ts;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const auto [a, b] = fam.line_support(i);
        for (const Rational& t : {a, b})
            if (Rational(0) < t && t < Rational(1)) ts.push_back(t);
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (static_cast<long>(ts.size()) < k)
        throw BudgetError("not enough distinct boundary-point targets for k pushers", k_lo, k_hi);

    std::vector<Word> words;
    std::vector<IntervalSet> images;
    for (long j = 0; j < k; ++j) {
        const Rational& t = ts[j];
        const Rational prev = j == 0 ? Rational(0) : ts[j - 1];
        const Rational next = j + 1 == static_cast<long>(ts.size()) ? Rational(1) : ts[j + 1];
        const Rational r = std::min(t - prev, next - t) / Rational(3);
        ShrinkCert sc = shrink_into(fam, k_lo, k_hi, t, t - r, t + r, budget);
        words.push_back(sc.word);
        images.push_back(map_image(word_to_map(fam, sc.word), K));
    }
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (!disjoint(images[i], images[j]))
                throw std::logic_error("pusher images are not disjoint");
    return words;
}

// ---------------------------------------------------------------------------
// Certificate replay.

namespace {

bool replay_pair(const PLMap& f0, const PLMap& g0, const FPairCert& cert) {
    PLMap f = f0, g = g0;
    if (cert.conjugator) {
        f = conjugate(*cert.conjugator, f);
        g = conjugate(*cert.conjugator, g);
    }
    FPairCert fresh = certify_status(f, g);
    if (fresh.pattern_ok != cert.pattern_ok) return false;
    if (!fresh.pattern_ok) return !cert.certified;
    return fresh.a_prime == cert.a_prime && fresh.b == cert.b && fresh.value == cert.value &&
           fresh.certified == cert.certified;
}

}  // namespace

bool replay(const PLMap& f, const PLMap& g, const FPairCert& cert) {
    return replay_pair(f, g, cert);
}

bool replay(const GeneratingFamily& fam, const RingCert& cert) {
    const std::size_t m = fam.size();
    if (cert.pairs.size() != m) return false;
    if (is_ring(fam.supports()) != cert.ring) return false;
    bool all = cert.ring;
    std::optional<std::size_t> failing;
    for (std::size_t i = 0; i < m; ++i) {
        if (!replay_pair(fam.gen(i), fam.gen((i + 1) % m), cert.pairs[i])) return false;
        if (!cert.pairs[i].certified && !failing) failing = i;
        all = all && cert.pairs[i].certified;
    }
    return all == cert.certified && failing == cert.failing_index;
}

bool replay(const GeneratingFamily& fam, const ChainCert& cert) {
    const std::size_t m = fam.size();
    if (cert.N < 1 || cert.pairs.size() + 1 != m) return false;
    if (is_chain(fam.supports()) != cert.chain) return false;
    std::vector<PLMap> powered;
    powered.reserve(m);
    for (std::size_t i = 0; i < m; ++i) powered.push_back(power(fam.gen(i), cert.N));
    bool all = cert.chain;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!replay_pair(powered[i], powered[i + 1], cert.pairs[i])) return false;
        all = all && cert.pairs[i].certified;
    }
    return all == cert.certified;
}

bool replay(const GeneratingFamily& fam, const ExpansionCert& cert) {
    if (fam.size() < 4 || cert.N < 1) return false;
    const std::vector<PLMap> maps = expanded_generators(fam, cert.N);
    if (maps != cert.new_family) return false;
    std::optional<GeneratingFamily> next;
    try {
        next.emplace(FamilyContext::circle, maps);
    } catch (const std::domain_error&) {
        return false;
    }
    const std::size_t m = fam.size();
    const auto arc = [&](std::size_t i) { return next->supports()[i].arcs().at(0); };
    const std::vector<std::vector<CirclePoint>> expected = {
        {arc(m).lower(), arc(m - 1).upper(), arc(0).lower(), arc(m).upper()},
        {arc(m).upper(), arc(1).lower(), arc(0).upper()}};
    if (cert.boundary_checks.size() != expected.size()) return false;
    bool all_bc = true;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (cert.boundary_checks[i].points != expected[i]) return false;
        if (cert.boundary_checks[i].ok != cyclically_ordered_weak(expected[i])) return false;
        if (cert.boundary_checks[i].strict != cyclically_ordered(expected[i])) return false;
        all_bc = all_bc && cert.boundary_checks[i].ok;
    }
    if (!replay(*next, cert.ring_cert)) return false;
    return cert.certified == (all_bc && cert.ring_cert.certified);
}

bool replay(const GeneratingFamily& fam, const ShrinkCert& cert) {
    for (const auto& l : cert.word)
        if (l.index >= fam.size() || l.exponent == 0) return false;
    for (long s : exponent_sums(cert.word, fam.size()))
        if (s != 0) return false;
    const WordRun run = run_word(fam, cert.word, cert.i_lo, cert.i_hi);
    if (run.steps != cert.steps) return false;
    if (run.lo != cert.final_lo || run.hi != cert.final_hi) return false;
    const bool included = cert.j_lo < run.lo && run.hi < cert.j_hi;
    return included == cert.included && included;
}

bool replay(const GeneratingFamily& fam, const DisplaceCert& cert) {
    for (const auto& l : cert.word)
        if (l.index >= fam.size() || l.exponent == 0) return false;
    for (long s : exponent_sums(cert.word, fam.size()))
        if (s != 0) return false;
    const WordRun run = run_word(fam, cert.word, cert.i_lo, cert.i_hi);
    if (run.lo != cert.image_lo || run.hi != cert.image_hi) return false;
    const bool disjoint_now = run.hi < cert.i_lo || cert.i_hi < run.lo;
    return disjoint_now == cert.disjoint && disjoint_now;
}

}  // namespace ringkit
