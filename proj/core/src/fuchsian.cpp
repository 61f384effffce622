#include "weyllab/fuchsian.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace weyllab {

namespace {

const PlanePoint kBase{0.0, 1.0}; // the point i

double displacement(const MoebiusElement& m) { return hyp_distance(apply_moebius(m, kBase), kBase); }

/// Tolerance-aware dedup map for normalized Moebius matrices: quantized key
/// buckets with neighbor probing, exact comparison within each bucket.
class MatrixKeyMap {
public:
    explicit MatrixKeyMap(double tol = 1e-8) : tol_(tol), q_(tol * 10.0) {}

    // Returns index of an existing equal matrix, or inserts and returns ~0-based
    // new index with `inserted` set.
    std::size_t find_or_insert(const MoebiusElement& m, bool& inserted) {
        MoebiusElement n = m.normalized();
        long long k[4] = {qz(n.a), qz(n.b), qz(n.c), qz(n.d)};
        for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db)
                for (int dc = -1; dc <= 1; ++dc)
                    for (int dd = -1; dd <= 1; ++dd) {
                        auto it = buckets_.find(pack(k[0] + da, k[1] + db, k[2] + dc, k[3] + dd));
                        if (it == buckets_.end()) continue;
                        for (std::size_t idx : it->second)
                            if (store_[idx].approx_equal(n, tol_)) {
                                inserted = false;
                                return idx;
                            }
                    }
        std::size_t idx = store_.size();
        store_.push_back(n);
        buckets_[pack(k[0], k[1], k[2], k[3])].push_back(idx);
        inserted = true;
        return idx;
    }

    bool contains(const MoebiusElement& m) {
        // probe without inserting
        MoebiusElement n = m.normalized();
        long long k[4] = {qz(n.a), qz(n.b), qz(n.c), qz(n.d)};
        for (int da = -1; da <= 1; ++da)
            for (int db = -1; db <= 1; ++db)
                for (int dc = -1; dc <= 1; ++dc)
                    for (int dd = -1; dd <= 1; ++dd) {
                        auto it = buckets_.find(pack(k[0] + da, k[1] + db, k[2] + dc, k[3] + dd));
                        if (it == buckets_.end()) continue;
                        for (std::size_t idx : it->second)
                            if (store_[idx].approx_equal(n, tol_)) return true;
                    }
        return false;
    }

    std::size_t size() const { return store_.size(); }
    const MoebiusElement& at(std::size_t i) const { return store_[i]; }

private:
    double tol_, q_;
    std::vector<MoebiusElement> store_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;

    long long qz(double x) const { return llround(x / q_); }
    static std::uint64_t pack(long long a, long long b, long long c, long long d) {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](long long v) {
            h = fnv1a64(&v, sizeof(v), h);
        };
        mix(a); mix(b); mix(c); mix(d);
        return h;
    }
};

bool matrix_lex_less(const MoebiusElement& x, const MoebiusElement& y, double tol = 1e-9) {
    const double ax[4] = {x.a, x.b, x.c, x.d};
    const double ay[4] = {y.a, y.b, y.c, y.d};
    for (int i = 0; i < 4; ++i) {
        if (ax[i] < ay[i] - tol) return true;
        if (ax[i] > ay[i] + tol) return false;
    }
    return false;
}

// Long-double matrix arithmetic for product chains: the accumulated roundoff
// of repeated compositions grows like the product of the operator norms, so
// the extra mantissa bits keep deep orbit products inside the deduplication
// tolerance.
struct LMat {
    long double a, b, c, d;
};

inline LMat lcompose(const LMat& x, const LMat& y) {
    return LMat{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                x.c * y.b + x.d * y.d};
}

inline LMat linverse(const LMat& m) {
    long double det = m.a * m.d - m.b * m.c;
    return LMat{m.d / det, -m.b / det, -m.c / det, m.a / det};
}

inline MoebiusElement to_double(const LMat& m) {
    return MoebiusElement{static_cast<double>(m.a), static_cast<double>(m.b),
                          static_cast<double>(m.c), static_cast<double>(m.d)}
        .normalized();
}

std::vector<LMat> letter_lmats(const GeneratorSet& gs) {
    std::vector<LMat> l;
    for (const auto& g : gs.generators) l.push_back({g.a, g.b, g.c, g.d});
    return l;
}

inline LMat letter_lmat(const std::vector<LMat>& gens, std::int8_t letter) {
    int idx = (letter > 0 ? letter : -letter) - 1;
    LMat m = gens[static_cast<std::size_t>(idx)];
    if (letter < 0) m = LMat{m.d, -m.b, -m.c, m.a};
    return m;
}

} // namespace

const MoebiusElement GeneratorSet::letter_element(std::int8_t l) const {
    int idx = (l > 0 ? l : -l) - 1;
    if (idx < 0 || static_cast<std::size_t>(idx) >= generators.size())
        throw Error("fuchsian.Word", "letter out of range");
    return l > 0 ? generators[static_cast<std::size_t>(idx)]
                 : generators[static_cast<std::size_t>(idx)].inverse();
}

MoebiusElement GeneratorSet::evaluate(const GroupWord& w) const {
    MoebiusElement m = MoebiusElement::identity();
    int sinceRenorm = 0;
    for (std::int8_t l : w.letters) {
        m = compose(m, letter_element(l));
        // renormalize every 16 compositions to hold det drift below 1e-12
        if (++sinceRenorm == 16) {
            m = m.normalized();
            sinceRenorm = 0;
        }
    }
    return m.normalized();
}

void GeneratorSet::validate(double relTol) const {
    if (generators.empty()) throw Error("fuchsian.Generators", "no generators");
    for (const auto& g : generators)
        if (std::fabs(g.det() - 1.0) > 1e-9)
            throw Error("fuchsian.Generators", "generator determinant far from 1");
    for (const auto& rel : relationWords) {
        MoebiusElement m = evaluate(rel);
        MoebiusElement id = MoebiusElement::identity();
        if (!m.approx_equal(id, relTol))
            throw Error("fuchsian.Relations", "relation word does not evaluate to +-identity");
    }
    // Cocompactness guard: no parabolic among generators and 2-letter
    // cyclically reduced words.
    auto check = [&](const MoebiusElement& m, const std::string& what) {
        MoebiusClass c = classify(m);
        if (c == MoebiusClass::Parabolic)
            throw Error("fuchsian.Cocompact", "parabolic " + what);
    };
    const int n = static_cast<int>(generators.size());
    for (int i = 0; i < n; ++i) check(generators[static_cast<std::size_t>(i)], "generator");
    for (int a = -n; a <= n; ++a) {
        if (a == 0) continue;
        for (int b = -n; b <= n; ++b) {
            if (b == 0 || b == -a) continue;
            GroupWord w;
            w.letters = {static_cast<std::int8_t>(a), static_cast<std::int8_t>(b)};
            if (!is_cyclically_reduced(w)) continue;
            check(evaluate(w), "2-letter word");
        }
    }
}

GeneratorSet bolza_surface() {
    // Four boosts of trace 2(1+sqrt2) with axes through i at angles k*pi/4;
    // the regular-octagon side pairing of the genus-2 surface.
    const double al = 1.0 + std::sqrt(2.0);
    const double be = std::sqrt(2.0 + 2.0 * std::sqrt(2.0));
    MoebiusElement g0{al, be, be, al};
    const double c8 = std::cos(std::numbers::pi / 8.0);
    const double s8 = std::sin(std::numbers::pi / 8.0);
    MoebiusElement K{c8, s8, -s8, c8};

    GeneratorSet gs;
    gs.name = "bolza";
    MoebiusElement rot = MoebiusElement::identity();
    for (int k = 0; k < 4; ++k) {
        MoebiusElement gk = compose(compose(rot, g0), rot.inverse()).normalized();
        gs.generators.push_back(gk);
        rot = compose(rot, K);
    }
    GroupWord rel;
    rel.letters = {1, -2, 3, -4, -1, 2, -3, 4};
    gs.relationWords.push_back(rel);
    return gs;
}

std::string generator_file_text(const GeneratorSet& gs) {
    std::ostringstream os;
    char buf[160];
    for (const auto& g : gs.generators) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g\n", g.a, g.b, g.c, g.d);
        os << buf;
    }
    for (const auto& rel : gs.relationWords) os << "rel: " << word_to_string(rel) << "\n";
    return os.str();
}

GeneratorSet parse_generator_file(const std::string& text, const std::string& name) {
    GeneratorSet gs;
    gs.name = name;
    std::istringstream is(text);
    std::string line;
    long lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty()) continue;
        if (line.rfind("rel:", 0) == 0) {
            gs.relationWords.push_back(word_from_string(line.substr(4)));
            continue;
        }
        std::istringstream ls(line);
        double a, b, c, d;
        if (!(ls >> a >> b >> c >> d))
            throw FileFormatError("expected four matrix entries", lineNo);
        gs.generators.push_back(MoebiusElement{a, b, c, d});
    }
    if (gs.generators.empty()) throw FileFormatError("no generator lines found");
    return gs;
}

void save_generator_file(const GeneratorSet& gs, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("io.Open", "cannot write " + path);
    f << generator_file_text(gs);
}

GeneratorSet load_generator_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("io.Open", "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string base = path;
    auto slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    GeneratorSet gs = parse_generator_file(ss.str(), base);
    gs.validate();
    return gs;
}

namespace {

/// DFS over freely reduced words emitting canonical (lex-least rotation,
/// cyclically reduced) representatives. Letters explored in the canonical
/// order so output is deterministic.
struct WordDfs {
    int nGen;
    int maxLetters;
    std::size_t budget;
    std::size_t emitted = 0;
    const std::function<void(const GroupWord&)>* sink;

    std::vector<std::int8_t> letterOrder;

    explicit WordDfs(int n) : nGen(n) {
        for (int k = 1; k <= n; ++k) {
            letterOrder.push_back(static_cast<std::int8_t>(k));
            letterOrder.push_back(static_cast<std::int8_t>(-k));
        }
    }

    static bool is_canonical_rotation(const GroupWord& w) {
        GroupWord c = canonical_rotation(w);
        return c == w;
    }

    void run(int len, GroupWord& w, std::int8_t firstLetterOnly = 0) {
        if (static_cast<int>(w.size()) == len) {
            if (w.letters.front() != static_cast<std::int8_t>(-w.letters.back()) || len == 1) {
                if (is_canonical_rotation(w)) {
                    if (++emitted > budget)
                        throw MemoryBudgetError("conjugacy enumeration budget exceeded");
                    (*sink)(w);
                }
            }
            return;
        }
        for (std::int8_t l : letterOrder) {
            if (w.empty() && firstLetterOnly != 0 && l != firstLetterOnly) continue;
            if (!w.empty() && w.letters.back() == static_cast<std::int8_t>(-l)) continue;
            // Lex-min rotations must start with the minimal letter of the word;
            // cheap prune: never start a word with a letter greater than any
            // that could follow (full check happens at emission).
            w.letters.push_back(l);
            run(len, w);
            w.letters.pop_back();
        }
    }
};

} // namespace

void enumerate_conjugacy_classes(const GeneratorSet& gs, int maxLetters,
                                 const std::function<void(const GroupWord&)>& sink,
                                 std::size_t maxWords) {
    if (maxLetters < 1) throw Error("fuchsian.Enumerate", "maxLetters >= 1 required");
    WordDfs dfs(static_cast<int>(gs.count()));
    dfs.maxLetters = maxLetters;
    dfs.budget = maxWords;
    dfs.sink = &sink;
    GroupWord w;
    for (int len = 1; len <= maxLetters; ++len) dfs.run(len, w);
}

std::vector<GroupWord> collect_conjugacy_classes(const GeneratorSet& gs, int maxLetters,
                                                 std::size_t maxWords) {
    std::vector<GroupWord> out;
    enumerate_conjugacy_classes(gs, maxLetters, [&](const GroupWord& w) { out.push_back(w); },
                                maxWords);
    return out;
}

std::vector<OrbitBallElement> orbit_ball(const GeneratorSet& gs, double radius,
                                         std::size_t maxElements) {
    // BFS over the orbit graph by left multiplication. Any element u with
    // d(u i, i) <= radius reduces to the identity through elements of
    // non-increasing displacement (Dirichlet reduction), so expanding every
    // kept element visits the whole ball. Products are carried in long double;
    // distinct group elements in such balls differ by far more than the 1e-6
    // tolerance while the accumulated product roundoff stays far below it.
    MatrixKeyMap seen(1e-6);
    std::vector<OrbitBallElement> out;
    std::vector<LMat> exact;
    std::deque<std::size_t> queue;
    const std::vector<LMat> lgens = letter_lmats(gs);

    bool inserted = false;
    seen.find_or_insert(MoebiusElement::identity(), inserted);
    out.push_back({MoebiusElement::identity(), GroupWord{}});
    exact.push_back(LMat{1.0L, 0.0L, 0.0L, 1.0L});
    queue.push_back(0);

    const double reach = radius + 1e-9;
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        LMat m = exact[cur];
        GroupWord w = out[cur].word;
        for (int k = 1; k <= static_cast<int>(gs.count()); ++k) {
            for (int sgn = +1; sgn >= -1; sgn -= 2) {
                std::int8_t l = static_cast<std::int8_t>(sgn * k);
                LMat nl = lcompose(letter_lmat(lgens, l), m);
                MoebiusElement nm = to_double(nl);
                if (displacement(nm) > reach) continue;
                seen.find_or_insert(nm, inserted);
                if (!inserted) continue;
                if (out.size() >= maxElements)
                    throw MemoryBudgetError("orbit ball exceeds element budget");
                GroupWord nw;
                nw.letters.reserve(w.size() + 1);
                nw.letters.push_back(l);
                nw.letters.insert(nw.letters.end(), w.letters.begin(), w.letters.end());
                out.push_back({nm, freely_reduce(std::move(nw))});
                exact.push_back(nl);
                queue.push_back(out.size() - 1);
            }
        }
    }
    return out;
}

namespace {

double axis_distance_to_base(const MoebiusElement& g) {
    return distance_to_axis(g, kBase);
}

} // namespace

MoebiusElement conjugacy_canonical_matrix(const GeneratorSet& gs, const MoebiusElement& g0,
                                          double axisReach) {
    // Conjugates are always recomputed fresh from a freely reduced conjugator
    // word. Chained matrix conjugation amplifies roundoff by the square of the
    // operator norm per step, which breaks deduplication; a single sandwich
    // h g h^-1 with short h keeps the error near machine precision.
    MoebiusElement u0 = g0.normalized();
    // The sandwich intermediates are ~|H|^2 |u| and cancel down to O(|u|),
    // so everything is evaluated in long double to keep entry errors well
    // below the dedup tolerance.
    const std::vector<LMat> lgens = letter_lmats(gs);
    LMat lu{u0.a, u0.b, u0.c, u0.d};
    // ok=false marks sandwiches whose determinant drowned in roundoff; those
    // only happen for conjugates far from the base point, so callers treat
    // them as infinitely distant.
    struct ConjResult {
        MoebiusElement m;
        bool ok;
    };
    auto conj_eval = [&](const GroupWord& h) -> ConjResult {
        LMat H{1.0L, 0.0L, 0.0L, 1.0L};
        for (std::int8_t l : h.letters) H = lcompose(H, letter_lmat(lgens, l));
        LMat v = lcompose(lcompose(H, lu), linverse(H));
        long double det = v.a * v.d - v.b * v.c;
        long double mag = std::max(std::max(fabsl(v.a), fabsl(v.b)),
                                   std::max(fabsl(v.c), fabsl(v.d)));
        if (!(det > 0.5L && det < 2.0L) || !(mag < 1e6L))
            return {MoebiusElement::identity(), false};
        return {to_double(v), true};
    };
    auto prepend = [](std::int8_t l, const GroupWord& h) {
        GroupWord r;
        r.letters.reserve(h.size() + 1);
        r.letters.push_back(l);
        r.letters.insert(r.letters.end(), h.letters.begin(), h.letters.end());
        return freely_reduce(std::move(r));
    };

    // Greedy descent on distance(axis, i) over generator conjugations.
    // Descend until the axis is safely inside the plateau reach. Only
    // macroscopic improvements are accepted; chasing sub-1e-3 improvements
    // would follow roundoff noise and grow the conjugator without bound.
    const double stopAt = axisReach - 0.5;
    GroupWord h;
    double cur = axis_distance_to_base(u0);
    int greedySteps = 0;
    auto safe_axis_dist = [&](const MoebiusElement& m) {
        if (classify(m) != MoebiusClass::Hyperbolic)
            return std::numeric_limits<double>::infinity(); // precision loss
        return axis_distance_to_base(m);
    };
    auto axis_dist_of = [&](const GroupWord& hw) {
        ConjResult r = conj_eval(hw);
        return r.ok ? safe_axis_dist(r.m) : std::numeric_limits<double>::infinity();
    };
    while (cur > stopAt) {
        GroupWord bestH;
        double bestVal = cur;
        // lookahead up to 3 letters; depth 1 almost always suffices
        std::vector<GroupWord> frontier{h};
        for (int depth = 1; depth <= 3 && bestVal >= cur - 1e-3; ++depth) {
            std::vector<GroupWord> next;
            for (const auto& hf : frontier) {
                for (int k = 1; k <= static_cast<int>(gs.count()); ++k) {
                    for (int sgn = +1; sgn >= -1; sgn -= 2) {
                        GroupWord h2 = prepend(static_cast<std::int8_t>(sgn * k), hf);
                        if (h2.size() <= hf.size()) continue; // cancelled back
                        double val = axis_dist_of(h2);
                        if (val < bestVal - 1e-3) {
                            bestVal = val;
                            bestH = h2;
                        }
                        next.push_back(std::move(h2));
                    }
                }
            }
            frontier = std::move(next);
        }
        if (bestVal >= cur - 1e-3)
            throw Error("fuchsian.Canonical", "axis descent stalled at distance " +
                                                  std::to_string(cur));
        h = std::move(bestH);
        cur = bestVal;
        if (++greedySteps > 200)
            throw Error("fuchsian.Canonical", "axis descent failed to converge");
    }

    // Rebase on the descended element so the plateau sandwiches act on a
    // small-entry matrix; a long greedy conjugator would otherwise amplify
    // the input roundoff through every subsequent evaluation.
    if (!h.empty()) {
        ConjResult r = conj_eval(h);
        if (!r.ok) throw Error("fuchsian.Canonical", "descent rebase lost precision");
        lu = LMat{r.m.a, r.m.b, r.m.c, r.m.d};
        h = GroupWord{};
    }

    // Collect the connected plateau of conjugates with axis within reach and
    // take the lexicographically least normalized matrix. Distinct group
    // elements in this ball are separated by far more than the dedup
    // tolerance, so 1e-6 admits roundoff while never merging two elements.
    MatrixKeyMap seen(1e-6);
    bool inserted = false;
    MoebiusElement um = conj_eval(h).m;
    seen.find_or_insert(um, inserted);
    std::deque<GroupWord> queue{h};
    MoebiusElement bestMat = um;
    std::size_t explored = 0;
    while (!queue.empty()) {
        GroupWord hv = std::move(queue.front());
        queue.pop_front();
        MoebiusElement v = conj_eval(hv).m;
        if (matrix_lex_less(v, bestMat)) bestMat = v;
        if (++explored > 100000)
            throw Error("fuchsian.Canonical", "conjugacy plateau exploration exceeded budget");
        for (int k = 1; k <= static_cast<int>(gs.count()); ++k) {
            for (int sgn = +1; sgn >= -1; sgn -= 2) {
                GroupWord h2 = prepend(static_cast<std::int8_t>(sgn * k), hv);
                ConjResult w = conj_eval(h2);
                if (!w.ok) continue; // precision overflow = far conjugate
                // Centralizer steps fix the element; following them only grows
                // the conjugator word (and its roundoff) without reaching new
                // conjugates, so they are pruned.
                if (w.m.approx_equal(v, 1e-7)) continue;
                if (safe_axis_dist(w.m) > axisReach) continue;
                seen.find_or_insert(w.m, inserted);
                if (inserted) queue.push_back(std::move(h2));
            }
        }
    }
    return bestMat;
}

namespace {

bool conjugate_dfs(const std::vector<LMat>& lgens, const LMat& lg, const MoebiusElement& target,
                   const LMat& h, std::int8_t lastLetter, int depthLeft, double tol) {
    LMat v = lcompose(lcompose(h, lg), linverse(h));
    long double det = v.a * v.d - v.b * v.c;
    long double mag = std::max(std::max(fabsl(v.a), fabsl(v.b)),
                               std::max(fabsl(v.c), fabsl(v.d)));
    // an ill-conditioned or out-of-range sandwich cannot match the target;
    // skip the comparison but keep exploring
    if (det > 0.5L && det < 2.0L && mag < 1e6L) {
        MoebiusElement c = to_double(v);
        if (c.approx_equal(target, tol)) return true;
    }
    if (depthLeft == 0) return false;
    const int nGen = static_cast<int>(lgens.size());
    for (int k = 1; k <= nGen; ++k) {
        for (int sgn = +1; sgn >= -1; sgn -= 2) {
            std::int8_t l = static_cast<std::int8_t>(sgn * k);
            if (l == static_cast<std::int8_t>(-lastLetter)) continue; // reduced words only
            LMat nh = lcompose(letter_lmat(lgens, l), h);
            if (conjugate_dfs(lgens, lg, target, nh, l, depthLeft - 1, tol)) return true;
        }
    }
    return false;
}

} // namespace

bool conjugate_by_search(const GeneratorSet& gs, const MoebiusElement& g,
                         const MoebiusElement& g2, int conjLetters, double tol) {
    // DFS over freely reduced conjugator words; independent of the
    // canonical-axis machinery so it can serve as its oracle. Sandwiches are
    // evaluated in long double against the cancellation of the intermediates.
    MoebiusElement target = g2.normalized();
    const std::vector<LMat> lgens = letter_lmats(gs);
    const LMat lg{g.a, g.b, g.c, g.d};
    return conjugate_dfs(lgens, lg, target, LMat{1.0L, 0.0L, 0.0L, 1.0L}, 0, conjLetters, tol);
}

namespace {

/// Circumradius of the Dirichlet fundamental domain about i, estimated by a
/// directional boundary search against the 3-letter orbit.
double dirichlet_circumradius(const GeneratorSet& gs) {
    std::vector<PlanePoint> orbitPts;
    {
        // Displacement ball generous enough to bound the domain.
        double maxGen = 0.0;
        for (const auto& g : gs.generators) maxGen = std::max(maxGen, displacement(g));
        auto ball = orbit_ball(gs, 3.0 * maxGen + 1e-9, 2000000);
        for (const auto& e : ball)
            if (!e.word.empty()) orbitPts.push_back(apply_moebius(e.m, kBase));
    }
    auto point_at = [&](double theta, double r) {
        // Geodesic polar coordinates about i: direction theta, distance r.
        // The geodesic through i with initial Euclidean angle theta; use the
        // isometry z -> rotation to reduce to the vertical case.
        // Vertical ray: point i*e^r has distance r. Rotate by (theta - pi/2)
        // about i with the elliptic element.
        double half = 0.5 * (theta - std::numbers::pi / 2.0);
        MoebiusElement rot{std::cos(half), std::sin(half), -std::sin(half), std::cos(half)};
        return apply_moebius(rot, PlanePoint(0.0, std::exp(r)));
    };
    auto inside = [&](const PlanePoint& z) {
        double d0 = hyp_distance(z, kBase);
        for (const auto& p : orbitPts)
            if (hyp_distance(z, p) < d0 - 1e-12) return false;
        return true;
    };
    double worst = 0.0;
    const int nDir = 2048;
    for (int k = 0; k < nDir; ++k) {
        double theta = 2.0 * std::numbers::pi * (k + 0.5) / nDir;
        double lo = 0.0, hi = 8.0;
        for (int it = 0; it < 48; ++it) {
            double mid = 0.5 * (lo + hi);
            if (inside(point_at(theta, mid)))
                lo = mid;
            else
                hi = mid;
        }
        worst = std::max(worst, hi);
    }
    // pad for the directional sampling of the corner vertices
    return worst + 0.08;
}

struct ClassAccumulator {
    // canonical matrix key -> entry under construction
    MatrixKeyMap canon{1e-5};
    std::vector<LengthSpectrumEntry> entries;

    // Keep the lex-least cyclic word seen for the class.
    void add(const MoebiusElement& canonical, double length, const GroupWord& memberWord) {
        bool inserted = false;
        std::size_t idx = canon.find_or_insert(canonical, inserted);
        GroupWord cw = canonical_rotation(cyclically_reduce(memberWord));
        if (inserted) {
            LengthSpectrumEntry e;
            e.length = length;
            e.primitiveLength = length;
            e.power = 1;
            e.canonicalWord = cw;
            e.element = canonical;
            entries.push_back(std::move(e));
        } else {
            LengthSpectrumEntry& e = entries[idx];
            if (!cw.empty() && (e.canonicalWord.empty() || cw < e.canonicalWord))
                e.canonicalWord = cw;
        }
    }
};

/// The axis-plateau canonicalization can split one class into two
/// representatives when the near-base conjugates fall into disconnected
/// islands (axis symmetry makes this real on arithmetic surfaces). A merge
/// pass over equal-length clusters repairs splits with an independent
/// conjugator search; false merges are impossible since representatives of
/// distinct classes are never conjugate.
std::vector<LengthSpectrumEntry> merge_conjugate_duplicates(
    std::vector<LengthSpectrumEntry> entries, const GeneratorSet& gs, double clusterTol) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.canonicalWord < b.canonicalWord;
    });
    std::vector<LengthSpectrumEntry> out;
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].length - entries[i].length <= clusterTol) ++j;
        std::size_t clusterStart = out.size();
        for (std::size_t k = i; k < j; ++k) {
            bool merged = false;
            for (std::size_t r = clusterStart; r < out.size() && !merged; ++r) {
                if (entries[k].element.approx_equal(out[r].element, 1e-5) ||
                    conjugate_by_search(gs, entries[k].element, out[r].element, 4, 1e-6)) {
                    merged = true;
                    if (entries[k].canonicalWord < out[r].canonicalWord)
                        out[r].canonicalWord = entries[k].canonicalWord;
                    if (matrix_lex_less(entries[k].element, out[r].element))
                        out[r].element = entries[k].element;
                }
            }
            if (!merged) out.push_back(entries[k]);
        }
        i = j;
    }
    return out;
}

void decompose_powers(std::vector<LengthSpectrumEntry>& entries, const GeneratorSet& gs,
                      double axisReach, double clusterTol) {
    if (entries.empty()) return;
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.canonicalWord < b.canonicalWord;
    });
    const double lmin = entries.front().length;
    // canonical matrices of already-processed (shorter) entries, for power lookup
    std::vector<double> lengths;
    lengths.reserve(entries.size());
    for (const auto& e : entries) lengths.push_back(e.length);

    for (std::size_t i = 0; i < entries.size(); ++i) {
        LengthSpectrumEntry& e = entries[i];
        int kmax = static_cast<int>(std::floor(e.length / std::max(lmin, 1e-9) + 1e-9));
        int bestK = 1;
        std::size_t bestRoot = i;
        for (int k = 2; k <= kmax; ++k) {
            double target = e.length / k;
            auto lo = std::lower_bound(lengths.begin(), lengths.end(), target - 1e-7 * k);
            auto hi = std::upper_bound(lengths.begin(), lengths.end(), target + 1e-7 * k);
            for (auto it = lo; it != hi; ++it) {
                std::size_t j = static_cast<std::size_t>(it - lengths.begin());
                if (j == i) continue;
                MoebiusElement pw = MoebiusElement::identity();
                for (int r = 0; r < k; ++r) pw = compose(pw, entries[j].element).normalized();
                MoebiusElement pc = conjugacy_canonical_matrix(gs, pw, axisReach);
                // canonical equality is the fast path; the conjugator search
                // covers canonicalization splits
                if (pc.approx_equal(e.element, 1e-5) ||
                    conjugate_by_search(gs, pw, e.element, 4, 1e-6)) {
                    if (k > bestK) {
                        bestK = k;
                        bestRoot = j;
                    }
                    break;
                }
            }
        }
        if (bestK > 1) {
            e.power = bestK;
            e.primitiveLength = entries[bestRoot].length;
        } else {
            // word-level consistency: a visually periodic canonical word forces
            // an element-level power, so this must agree
            auto [root, kw] = primitive_decomposition(e.canonicalWord);
            (void)root;
            if (kw > 1) {
                e.power = kw;
                e.primitiveLength = e.length / kw;
            }
        }
        (void)clusterTol;
    }
}

LengthSpectrum finalize_spectrum(std::vector<LengthSpectrumEntry> entries,
                                 const GeneratorSet& gs, double T, double axisReach,
                                 const SpectrumOptions& opts, std::string certificate) {
    entries = merge_conjugate_duplicates(std::move(entries), gs, opts.clusterTol);
    decompose_powers(entries, gs, axisReach, opts.clusterTol);
    LengthSpectrum ls;
    ls.entries = std::move(entries);
    ls.cutoff = T;
    ls.clusterTol = opts.clusterTol;
    ls.certificate = std::move(certificate);
    return ls;
}

} // namespace

LengthSpectrum build_length_spectrum(const GeneratorSet& gs, double T,
                                     const SpectrumOptions& opts) {
    if (!(T > 0.0)) throw Error("fuchsian.Spectrum", "T > 0 required");
    const double Rc = dirichlet_circumradius(gs);
    const double axisReach = Rc + 0.3;

    if (opts.method == SpectrumMethod::GeometricBall) {
        // Any class of translation length L <= T has a conjugate whose axis
        // meets the Dirichlet domain, and for such u:
        //   sinh(d(u i, i)/2) = sinh(L/2) cosh(dist(i, axis)),
        // so the orbit ball of radius D* below contains a member of every class.
        const double Dstar = 2.0 * std::asinh(std::sinh(0.5 * T) * std::cosh(Rc)) + 1e-9;
        auto ball = orbit_ball(gs, Dstar, opts.maxBallElements);

        ClassAccumulator acc;
        for (const auto& el : ball) {
            if (el.word.empty()) continue;
            if (classify(el.m) != MoebiusClass::Hyperbolic)
                throw Error("fuchsian.Spectrum", "non-hyperbolic nonidentity element (not cocompact torsion-free?)");
            double L = translation_length(el.m);
            if (L > T) continue;
            MoebiusElement canon = conjugacy_canonical_matrix(gs, el.m, axisReach);
            double Lc = translation_length(canon);
            acc.add(canon, Lc, el.word);
        }
        std::ostringstream cert;
        cert << "geometric-ball: Rc=" << format_sig(Rc, 6) << " D*=" << format_sig(Dstar, 6)
             << " ball=" << ball.size() << " classes=" << acc.entries.size();
        return finalize_spectrum(std::move(acc.entries), gs, T, axisReach, opts, cert.str());
    }

    // WordStabilize: letter-bound enumeration, certified by doubling.
    auto classes_at = [&](int letters) {
        // parallel over first-letter subtrees, deterministic merge
        std::vector<std::vector<GroupWord>> perLetter(2 * gs.count());
        std::vector<std::int8_t> firsts;
        for (int k = 1; k <= static_cast<int>(gs.count()); ++k) {
            firsts.push_back(static_cast<std::int8_t>(k));
            firsts.push_back(static_cast<std::int8_t>(-k));
        }
        parallel_for_chunks(firsts.size(), opts.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t fi = b; fi < e; ++fi) {
                WordDfs dfs(static_cast<int>(gs.count()));
                dfs.maxLetters = letters;
                dfs.budget = std::numeric_limits<std::size_t>::max();
                std::function<void(const GroupWord&)> sink = [&](const GroupWord& w) {
                    perLetter[fi].push_back(w);
                };
                dfs.sink = &sink;
                GroupWord w;
                for (int len = 1; len <= letters; ++len) dfs.run(len, w, firsts[fi]);
            }
        });
        ClassAccumulator acc;
        for (auto& bucket : perLetter)
            for (auto& w : bucket) {
                MoebiusElement m = gs.evaluate(w);
                if (classify(m) != MoebiusClass::Hyperbolic) continue;
                double L = translation_length(m);
                if (L > T) continue;
                MoebiusElement canon = conjugacy_canonical_matrix(gs, m, axisReach);
                acc.add(canon, translation_length(canon), w);
            }
        return acc;
    };

    auto signature = [](const std::vector<LengthSpectrumEntry>& es) {
        std::vector<double> ls;
        ls.reserve(es.size());
        for (const auto& e : es) ls.push_back(e.length);
        std::sort(ls.begin(), ls.end());
        return ls;
    };

    int N = opts.initialLetterBound;
    ClassAccumulator cur = classes_at(N);
    int doublings = 0;
    for (;;) {
        int N2 = std::min(2 * N, opts.maxLetterBound);
        if (N2 <= N)
            throw StabilizationError("letter bound cap reached before stabilization");
        ClassAccumulator next = classes_at(N2);
        auto s1 = signature(cur.entries), s2 = signature(next.entries);
        bool equal = s1.size() == s2.size();
        for (std::size_t i = 0; equal && i < s1.size(); ++i)
            equal = std::fabs(s1[i] - s2[i]) <= 1e-9;
        if (equal) {
            std::ostringstream cert;
            cert << "word-stabilize: N=" << N << " doubled to " << N2 << " unchanged, classes="
                 << next.entries.size();
            return finalize_spectrum(std::move(next.entries), gs, T, axisReach, opts, cert.str());
        }
        cur = std::move(next);
        N = N2;
        if (++doublings > 2)
            throw StabilizationError("spectrum still growing after two doublings");
    }
}

std::vector<DistinctLength> LengthSpectrum::distinct_lengths(double T) const {
    std::vector<DistinctLength> out;
    for (const auto& e : entries) {
        if (e.length > T) break;
        if (!out.empty() && std::fabs(e.length - out.back().length) <= clusterTol)
            out.back().multiplicity += 1;
        else
            out.push_back({e.length, 1});
    }
    return out;
}

std::size_t LengthSpectrum::count_below(double T) const {
    std::size_t n = 0;
    for (const auto& e : entries) {
        if (e.length > T) break;
        ++n;
    }
    return n;
}

int nu_distinct(const LengthSpectrum& ls, double T) {
    if (T > ls.cutoff + 1e-12) throw Error("fuchsian.Nu", "T exceeds spectrum cutoff");
    return static_cast<int>(ls.distinct_lengths(T).size());
}

double systole(const GeneratorSet& gs) {
    double minGen = std::numeric_limits<double>::infinity();
    for (const auto& g : gs.generators) minGen = std::min(minGen, translation_length(g));
    SpectrumOptions opts;
    LengthSpectrum ls = build_length_spectrum(gs, minGen + 1e-6, opts);
    if (ls.entries.empty()) throw Error("fuchsian.Systole", "no closed geodesics found");
    return ls.entries.front().length;
}

std::string spectrum_to_csv(const LengthSpectrum& ls) {
    std::ostringstream os;
    os << "length,primitiveLength,power,word,detTerm\n";
    char buf[128];
    for (const auto& e : ls.entries) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,", e.length, e.primitiveLength, e.power);
        os << buf << word_to_string(e.canonicalWord) << ",";
        std::snprintf(buf, sizeof(buf), "%.17g\n", e.detTerm);
        os << buf;
    }
    return os.str();
}

LengthSpectrum spectrum_from_csv(const std::string& csv, const GeneratorSet& gs,
                                 double expectedCutoff) {
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line) || line.rfind("length,", 0) != 0)
        throw FileFormatError("bad spectrum CSV header", 1);
    LengthSpectrum ls;
    ls.cutoff = expectedCutoff;
    long lineNo = 1;
    while (std::getline(is, line)) {
        ++lineNo;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t pos = 0;
        for (int c = 0; c < 4; ++c) {
            auto comma = line.find(',', pos);
            if (comma == std::string::npos) throw FileFormatError("expected 5 columns", lineNo);
            cols.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        cols.push_back(line.substr(pos));
        LengthSpectrumEntry e;
        e.length = std::stod(cols[0]);
        e.primitiveLength = std::stod(cols[1]);
        e.power = std::stoi(cols[2]);
        e.canonicalWord = word_from_string(cols[3]);
        e.detTerm = std::stod(cols[4]);
        e.element = gs.evaluate(e.canonicalWord);
        // integrity: cached length must match the word it claims to represent
        double L = translation_length(e.element);
        if (std::fabs(L - e.length) > 1e-12 * std::max(1.0, e.length))
            throw FileFormatError("cached length disagrees with canonical word", lineNo);
        ls.entries.push_back(std::move(e));
    }
    return ls;
}

std::string spectrum_cache_key(const GeneratorSet& gs, double T, const SpectrumOptions& opts) {
    std::ostringstream os;
    os << generator_file_text(gs) << "|T=";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", T);
    os << buf << "|tol=";
    std::snprintf(buf, sizeof(buf), "%.17g", opts.clusterTol);
    os << buf << "|method=" << (opts.method == SpectrumMethod::GeometricBall ? "ball" : "words")
       << "|v1";
    return to_hex(fnv1a64(os.str()));
}

} // namespace weyllab
