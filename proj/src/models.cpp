#include "qtor/models.hpp"
#include "qtor/errors.hpp"

namespace qtor {

static IntVec vec2(long a, long b) {
    IntVec v(2);
    v << Int(a), Int(b);
    return v;
}

OrbitComplex make_interval(int subdiv) {
    if (subdiv < 1) throw invalid_input("interval needs at least one edge");
    OrbitComplex x;
    x.torus_rank = 1;
    IntVec one(1);
    one << Int(1);
    x.facets = {{1, one}, {2, one}};
    x.faces = {{1, 0, {1}}, {2, 0, {2}}, {3, 1, {}}};
    const int s = subdiv;
    for (int i = 0; i <= s; ++i) {
        long face = i == 0 ? 1 : i == s ? 2 : 3;
        x.cells.push_back({i + 1, 0, face, {}});
    }
    for (int i = 1; i <= s; ++i)
        x.cells.push_back({s + 1 + i, 1, 3, {{i, -1}, {i + 1, +1}}});
    return x;
}

static OrbitComplex polygon_core(const std::vector<std::array<long, 2>>& fan,
                                 const std::vector<int>& subdiv) {
    const int k = (int)fan.size();
    if (k < 2) throw invalid_input("polygon needs at least two edges");
    if (!subdiv.empty() && (int)subdiv.size() != k)
        throw invalid_input("subdivision list must match the fan length");
    OrbitComplex x;
    x.torus_rank = 2;
    for (int i = 1; i <= k; ++i) x.facets.push_back({i, vec2(fan[i - 1][0], fan[i - 1][1])});
    for (int i = 1; i <= k; ++i) {
        long nxt = i % k + 1;
        x.faces.push_back({i, 0, {std::min<long>(i, nxt), std::max<long>(i, nxt)}});
    }
    for (int i = 1; i <= k; ++i) x.faces.push_back({k + i, 1, {i}});
    x.faces.push_back({2 * k + 1, 2, {}});

    for (int i = 1; i <= k; ++i) x.cells.push_back({i, 0, i, {}}); // corner i = facets i, i+1
    long next_id = k + 1;
    /* edge chains per facet; facet i runs corner (i-1) -> corner i */
    std::vector<std::vector<long>> chain(k + 1);
    for (int i = 1; i <= k; ++i) {
        long prev_corner = i == 1 ? k : i - 1;
        int m = subdiv.empty() ? 0 : subdiv[i - 1];
        std::vector<long> stops = {prev_corner};
        for (int w = 0; w < m; ++w) {
            x.cells.push_back({next_id, 0, k + i, {}});
            stops.push_back(next_id++);
        }
        stops.push_back(i);
        for (size_t t = 0; t + 1 < stops.size(); ++t) {
            x.cells.push_back({next_id, 1, k + i, {{stops[t], -1}, {stops[t + 1], +1}}});
            chain[i].push_back(next_id++);
        }
    }
    Cell top{next_id, 2, 2 * k + 1, {}};
    for (int step = 0; step < k; ++step) {
        int i = step == k - 1 ? 1 : step + 2; // facets 2, 3, ..., k, 1
        for (long e : chain[i]) top.boundary.push_back({e, +1});
    }
    x.cells.push_back(top);
    return x;
}

OrbitComplex make_triangle() { return polygon_core({{1, 0}, {0, 1}, {-1, -1}}, {}); }

OrbitComplex make_square() { return polygon_core({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {}); }

OrbitComplex make_polygon(const std::vector<std::array<long, 2>>& fan,
                          const std::vector<int>& subdiv) {
    return polygon_core(fan, subdiv);
}

OrbitComplex make_circle(int n, int cells, const IntMat* hol) {
    if (n < 1 || cells < 1) throw invalid_input("circle needs rank >= 1 and one cell pair");
    OrbitComplex x;
    x.torus_rank = n;
    x.faces = {{1, 1, {}}};
    const int m = cells;
    for (int i = 1; i <= m; ++i) x.cells.push_back({i, 0, 1, {}});
    for (int i = 1; i < m; ++i) x.cells.push_back({100 + i, 1, 1, {{i, -1}, {i + 1, +1}}});
    x.cells.push_back({100 + m, 1, 1, {{m, -1}, {1, +1}}});
    if (hol) {
        x.monodromy.present = true;
        for (int i = 1; i < m; ++i) x.monodromy.tree.push_back(100 + i);
        x.monodromy.matrices[100 + m] = *hol;
    }
    return x;
}

OrbitComplex make_surface(int genus, int n, const std::vector<IntMat>& loop_holonomy) {
    if (genus < 1) throw invalid_input("surface model needs genus >= 1");
    if (!loop_holonomy.empty() && (int)loop_holonomy.size() != 2 * genus)
        throw invalid_input("surface holonomy list must have 2*genus entries");
    OrbitComplex x;
    x.torus_rank = n;
    x.faces = {{1, 2, {}}};
    x.cells.push_back({1, 0, 1, {}});
    for (int i = 0; i < 2 * genus; ++i)
        x.cells.push_back({2 + i, 1, 1, {{1, -1}, {1, +1}}});
    Cell top{2 + 2 * genus, 2, 1, {}};
    for (int g = 0; g < genus; ++g) {
        long a = 2 + 2 * g, b = 3 + 2 * g;
        top.boundary.push_back({a, +1});
        top.boundary.push_back({b, +1});
        top.boundary.push_back({a, -1});
        top.boundary.push_back({b, -1});
    }
    x.cells.push_back(top);
    if (!loop_holonomy.empty()) {
        x.monodromy.present = true;
        for (int i = 0; i < 2 * genus; ++i) x.monodromy.matrices[2 + i] = loop_holonomy[i];
    }
    return x;
}

OrbitComplex make_cube() {
    OrbitComplex x;
    x.torus_rank = 3;
    IntVec e[3];
    for (int i = 0; i < 3; ++i) {
        e[i] = IntVec::Zero(3);
        e[i](i) = 1;
    }
    /* facets 1..3 = low sides, 4..6 = high sides; opposite pairs share e_i */
    for (int i = 0; i < 3; ++i) x.facets.push_back({i + 1, e[i]});
    for (int i = 0; i < 3; ++i) x.facets.push_back({i + 4, e[i]});

    /* positions t in {0,1,2}^3: 1 = interior along that axis */
    auto fid = [](int t0, int t1, int t2) { return 1L + t0 + 3 * t1 + 9 * t2; };
    for (int t2 = 0; t2 < 3; ++t2)
        for (int t1 = 0; t1 < 3; ++t1)
            for (int t0 = 0; t0 < 3; ++t0) {
                int t[3] = {t0, t1, t2};
                Face f;
                f.id = fid(t0, t1, t2);
                f.dim = (t0 == 1) + (t1 == 1) + (t2 == 1);
                for (int a = 0; a < 3; ++a) {
                    if (t[a] == 0) f.facets.push_back(a + 1);
                    if (t[a] == 2) f.facets.push_back(a + 4);
                }
                x.faces.push_back(f);
            }

    for (const Face& f : x.faces) {
        Cell c{f.id, f.dim, f.id, {}};
        int t[3] = {(int)((f.id - 1) % 3), (int)((f.id - 1) / 3 % 3), (int)((f.id - 1) / 9)};
        auto at = [&](int axis, int v) {
            int u[3] = {t[0], t[1], t[2]};
            u[axis] = v;
            return fid(u[0], u[1], u[2]);
        };
        std::vector<int> mid;
        for (int a = 0; a < 3; ++a)
            if (t[a] == 1) mid.push_back(a);
        if (f.dim == 1) {
            c.boundary = {{at(mid[0], 0), -1}, {at(mid[0], 2), +1}};
        } else if (f.dim == 2) {
            int a = mid[0], b = mid[1]; // a < b
            auto corner = [&](int va, int vb) {
                int u[3] = {t[0], t[1], t[2]};
                u[a] = va;
                u[b] = vb;
                return fid(u[0], u[1], u[2]);
            };
            auto edge_a = [&](int vb) { // axis a interior, b fixed
                int u[3] = {t[0], t[1], t[2]};
                u[b] = vb;
                return fid(u[0], u[1], u[2]);
            };
            auto edge_b = [&](int va) {
                int u[3] = {t[0], t[1], t[2]};
                u[a] = va;
                return fid(u[0], u[1], u[2]);
            };
            (void)corner;
            c.boundary = {{edge_a(0), +1}, {edge_b(2), +1}, {edge_a(2), -1}, {edge_b(0), -1}};
        } else if (f.dim == 3) {
            /* plain incidence; signs chosen so that dd = 0 with the square
               walks above: coefficient (-1)^c * (s == 0 ? +1 : -1) for the
               square missing axis c at side s */
            for (int cax = 0; cax < 3; ++cax)
                for (int s = 0; s <= 2; s += 2) {
                    int sign = ((cax % 2 == 0) ? 1 : -1) * (s == 0 ? 1 : -1);
                    c.boundary.push_back({at(cax, s), sign});
                }
        }
        x.cells.push_back(c);
    }
    return x;
}

/* small GL(2,Z) words over the standard generators */
static IntMat gl2_word(std::mt19937_64& rng, int max_len) {
    IntMat s(2, 2), t(2, 2), m(2, 2);
    s << Int(0), Int(-1), Int(1), Int(0);
    t << Int(1), Int(1), Int(0), Int(1);
    m << Int(1), Int(0), Int(0), Int(1);
    std::uniform_int_distribution<int> len(0, max_len), pick(0, 2);
    int l = len(rng);
    for (int i = 0; i < l; ++i) {
        switch (pick(rng)) {
        case 0: m = s * m; break;
        case 1: m = t * m; break;
        default: m = (t * s) * m; break;
        }
    }
    return m;
}

OrbitComplex random_complex(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> family(0, 5);
    switch (family(rng)) {
    case 0: {
        std::uniform_int_distribution<int> s(1, 5);
        return make_interval(s(rng));
    }
    case 1: {
        std::uniform_int_distribution<int> m(1, 6), coin(0, 1);
        if (coin(rng)) {
            IntMat h(1, 1);
            h << Int(-1);
            return make_circle(1, m(rng), &h);
        }
        return make_circle(1, m(rng));
    }
    case 2: {
        std::uniform_int_distribution<int> which(0, 2), twist(-2, 2), sub(0, 2);
        std::vector<std::array<long, 2>> fan;
        switch (which(rng)) {
        case 0: fan = {{1, 0}, {0, 1}, {-1, -1}}; break;
        case 1: fan = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}; break;
        default: fan = {{1, 0}, {0, 1}, {-1, twist(rng)}, {0, -1}}; break;
        }
        /* act by a unimodular matrix: dets of neighbor pairs are preserved */
        IntMat u = gl2_word(rng, 3);
        if (det_integer(u) < 0) u.col(0) = -u.col(0);
        for (auto& v : fan) {
            Int a = u(0, 0) * v[0] + u(0, 1) * v[1];
            Int b = u(1, 0) * v[0] + u(1, 1) * v[1];
            v = {a.get_si(), b.get_si()};
        }
        std::vector<int> subdiv(fan.size());
        for (auto& d : subdiv) d = sub(rng);
        return make_polygon(fan, subdiv);
    }
    case 3: {
        std::uniform_int_distribution<int> g(1, 2), coin(0, 1), pow(-2, 2);
        int genus = g(rng);
        if (!coin(rng)) return make_surface(genus, 2);
        std::vector<IntMat> hol;
        for (int i = 0; i < genus; ++i) {
            IntMat a = gl2_word(rng, 3);
            IntMat b = IntMat::Identity(2, 2);
            int p = pow(rng);
            bool inv = p < 0;
            for (int q = 0; q < (inv ? -p : p); ++q) b = a * b;
            if (inv) b = int_inverse_unimodular(b);
            hol.push_back(a);
            hol.push_back(b); // a power of a commutes with a
        }
        return make_surface(genus, 2, hol);
    }
    case 4:
        return make_cube();
    default:
        return make_triangle();
    }
}

} // namespace qtor
