// Frozen node/weight tables generated by scripts/gen_quadrature_tables.py
// (50-digit arithmetic, verified against closed-form moments); see the
// script header for the constructions.

#include "pbdg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace pbdg {

namespace {

constexpr int kLobattoMin = 2;
constexpr int kLobattoMax = 10;

const double lob_nodes_2[] = {-1.0, 1.0};
const double lob_weights_2[] = {1.0, 1.0};

const double lob_nodes_3[] = {-1.0, 0.0, 1.0};
const double lob_weights_3[] = {0.333333333333333333333, 1.33333333333333333333,
                                0.333333333333333333333};

const double lob_nodes_4[] = {-1.0, -0.447213595499957939282, 0.447213595499957939282, 1.0};
const double lob_weights_4[] = {0.166666666666666666667, 0.833333333333333333333,
                                0.833333333333333333333, 0.166666666666666666667};

const double lob_nodes_5[] = {-1.0, -0.654653670707977143798, 0.0, 0.654653670707977143798, 1.0};
const double lob_weights_5[] = {0.1, 0.544444444444444444444, 0.711111111111111111111,
                                0.544444444444444444444, 0.1};

const double lob_nodes_6[] = {-1.0, -0.765055323929464692851, -0.285231516480645096314,
                              0.285231516480645096314, 0.765055323929464692851, 1.0};
const double lob_weights_6[] = {0.0666666666666666666667, 0.378474956297846980317,
                                0.554858377035486353017,  0.554858377035486353017,
                                0.378474956297846980317,  0.0666666666666666666667};

const double lob_nodes_7[] = {-1.0,
                              -0.830223896278566929872,
                              -0.468848793470714213804,
                              0.0,
                              0.468848793470714213804,
                              0.830223896278566929872,
                              1.0};
const double lob_weights_7[] = {0.0476190476190476190476, 0.276826047361565948011,
                                0.431745381209862623418,  0.487619047619047619048,
                                0.431745381209862623418,  0.276826047361565948011,
                                0.0476190476190476190476};

const double lob_nodes_8[] = {-1.0,
                              -0.871740148509606615337,
                              -0.591700181433142302145,
                              -0.209299217902478868769,
                              0.209299217902478868769,
                              0.591700181433142302145,
                              0.871740148509606615337,
                              1.0};
const double lob_weights_8[] = {0.0357142857142857142857, 0.210704227143506039383,
                                0.341122692483504364764,  0.412458794658703881567,
                                0.412458794658703881567,  0.341122692483504364764,
                                0.210704227143506039383,  0.0357142857142857142857};

const double lob_nodes_9[] = {-1.0,
                              -0.899757995411460157312,
                              -0.677186279510737753446,
                              -0.363117463826178158711,
                              0.0,
                              0.363117463826178158711,
                              0.677186279510737753446,
                              0.899757995411460157312,
                              1.0};
const double lob_weights_9[] = {0.0277777777777777777778, 0.165495361560805525046,
                                0.274538712500161735281,  0.346428510973046345115,
                                0.371519274376417233560,  0.346428510973046345115,
                                0.274538712500161735281,  0.165495361560805525046,
                                0.0277777777777777777778};

const double lob_nodes_10[] = {-1.0,
                               -0.919533908166458813829,
                               -0.738773865105505075003,
                               -0.477924949810444495661,
                               -0.165278957666387024626,
                               0.165278957666387024626,
                               0.477924949810444495661,
                               0.738773865105505075003,
                               0.919533908166458813829,
                               1.0};
const double lob_weights_10[] = {0.0222222222222222222222, 0.133305990851070111126,
                                 0.224889342063126452119,  0.292042683679683757876,
                                 0.327539761183897456657,  0.327539761183897456657,
                                 0.292042683679683757876,  0.224889342063126452119,
                                 0.133305990851070111126,  0.0222222222222222222222};

struct LobattoTable {
    const double* nodes;
    const double* weights;
};

const LobattoTable lobatto_tables[] = {
    {lob_nodes_2, lob_weights_2}, {lob_nodes_3, lob_weights_3}, {lob_nodes_4, lob_weights_4},
    {lob_nodes_5, lob_weights_5}, {lob_nodes_6, lob_weights_6}, {lob_nodes_7, lob_weights_7},
    {lob_nodes_8, lob_weights_8}, {lob_nodes_9, lob_weights_9}, {lob_nodes_10, lob_weights_10},
};

// symmetric triangle rule orbits: {kind, a, b, weight per point}
//   kind 1: centroid; kind 3: barycentric (a, a, 1-2a) orbit;
//   kind 6: barycentric (a, b, 1-a-b) orbit
struct TriOrbit {
    int kind;
    double a, b, w;
};

const TriOrbit tri_deg1[] = {
    {1, 0.0, 0.0, 1.0},
};
const TriOrbit tri_deg2[] = {
    {3, 0.166666666666666666667, 0.0, 0.333333333333333333333},
};
const TriOrbit tri_deg4[] = {
    {3, 0.445948490915964886318, 0.0, 0.223381589678011465695},
    {3, 0.0915762135097707434596, 0.0, 0.109951743655321867638},
};
const TriOrbit tri_deg5[] = {
    {1, 0.0, 0.0, 0.225},
    {3, 0.470142064105115089770, 0.0, 0.132394152788506180738},
    {3, 0.101286507323456338801, 0.0, 0.125939180544827152596},
};
const TriOrbit tri_deg6[] = {
    {3, 0.249286745170910421292, 0.0, 0.116786275726379366025},
    {3, 0.0630890144915022283403, 0.0, 0.0508449063702068169209},
    {6, 0.310352451033784405417, 0.636502499121398647230, 0.0828510756183735751936},
};
const TriOrbit tri_deg8[] = {
    {1, 0.0, 0.0, 0.144315607677787168251},
    {3, 0.459292588292723156029, 0.0, 0.0950916342672846247939},
    {3, 0.170569307751760206622, 0.0, 0.103217370534718250282},
    {3, 0.0505472283170309754584, 0.0, 0.0324584976231980803109},
    {6, 0.263112829634638113422, 0.728492392955404281241, 0.0272303141744349942648},
};
const TriOrbit tri_deg10[] = {
    {1, 0.0, 0.0, 0.0908179903827535800953},
    {3, 0.485577633383657377368, 0.0, 0.0367259577564667047170},
    {3, 0.109481575485037054795, 0.0, 0.0453210594355279347826},
    {6, 0.141707219414879954757, 0.307939838764120950165, 0.0727579168454201086043},
    {6, 0.0250035347626863860740, 0.246672560639902693917, 0.0283272425310574848367},
    {6, 0.00954081540029945758015, 0.0668032510122002657735, 0.00942166696373282345993},
};

struct TriTable {
    int degree;
    const TriOrbit* orbits;
    int count;
};

const TriTable tri_tables[] = {
    {1, tri_deg1, 1}, {2, tri_deg2, 1},  {4, tri_deg4, 2},  {5, tri_deg5, 3},
    {6, tri_deg6, 3}, {8, tri_deg8, 5},  {10, tri_deg10, 6},
};

// expand orbits into explicit points; barycentric (l1, l2, l3) maps to
// cartesian (x, y) = (l2, l3) for vertices (0,0), (1,0), (0,1)
TriangleRule expand(const TriTable& t) {
    TriangleRule rule;
    rule.degree = t.degree;
    for (int o = 0; o < t.count; ++o) {
        const TriOrbit& orb = t.orbits[o];
        if (orb.kind == 1) {
            rule.points.push_back({1.0 / 3.0, 1.0 / 3.0, orb.w});
        } else if (orb.kind == 3) {
            const double a = orb.a, c = 1.0 - 2.0 * a;
            rule.points.push_back({a, a, orb.w});
            rule.points.push_back({c, a, orb.w});
            rule.points.push_back({a, c, orb.w});
        } else {
            const double a = orb.a, b = orb.b, c = 1.0 - a - b;
            rule.points.push_back({b, c, orb.w});
            rule.points.push_back({c, b, orb.w});
            rule.points.push_back({a, c, orb.w});
            rule.points.push_back({c, a, orb.w});
            rule.points.push_back({a, b, orb.w});
            rule.points.push_back({b, a, orb.w});
        }
    }
    return rule;
}

double legendre_pair(int n, double x, double& deriv) {
    // returns P_n(x), sets deriv = P_n'(x)
    double pm1 = 1.0, p = x;
    double dm1 = 0.0, d = 1.0;
    if (n == 0) {
        deriv = 0.0;
        return 1.0;
    }
    for (int m = 1; m < n; ++m) {
        double pn = ((2.0 * m + 1.0) * x * p - m * pm1) / (m + 1.0);
        double dn = dm1 + (2.0 * m + 1.0) * p;
        pm1 = p;
        p = pn;
        dm1 = d;
        d = dn;
    }
    deriv = d;
    return p;
}

LineRule make_gauss_legendre(int n) {
    LineRule r;
    r.n = n;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double d, p = legendre_pair(n, x, d);
            double dx = p / d;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double d, p = legendre_pair(n, x, d);
        (void)p;
        const double w = 2.0 / ((1.0 - x * x) * d * d);
        r.nodes[i] = x;
        r.weights[i] = w;
        r.nodes[n - 1 - i] = -x;  // exact symmetry by construction
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

}  // namespace

const LineRule& gauss_lobatto(int n) {
    if (n < kLobattoMin || n > kLobattoMax)
        throw std::invalid_argument("gauss_lobatto: tabulated orders are 2..10");
    static std::vector<LineRule> cache = [] {
        std::vector<LineRule> rules;
        for (int i = kLobattoMin; i <= kLobattoMax; ++i) {
            LineRule r;
            r.n = i;
            const LobattoTable& t = lobatto_tables[i - kLobattoMin];
            r.nodes.assign(t.nodes, t.nodes + i);
            r.weights.assign(t.weights, t.weights + i);
            rules.push_back(std::move(r));
        }
        return rules;
    }();
    return cache[n - kLobattoMin];
}

const LineRule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mu;
    static std::map<int, LineRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

const TriangleRule& triangle_rule(int degree) {
    if (degree < 1) throw std::invalid_argument("triangle_rule: degree must be >= 1");
    static std::vector<TriangleRule> cache = [] {
        std::vector<TriangleRule> rules;
        for (const TriTable& t : tri_tables) rules.push_back(expand(t));
        return rules;
    }();
    for (const TriangleRule& r : cache)
        if (r.degree >= degree) return r;
    throw std::invalid_argument("triangle_rule: degree above table maximum (10)");
}

}  // namespace pbdg
