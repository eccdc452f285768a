#include "qtor/fiber.hpp"
#include "qtor/errors.hpp"

namespace qtor {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
    return r;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    for (int t = 0; t < k; ++t) cur[t] = t;
    while (true) {
        out.push_back(cur);
        int t = k - 1;
        while (t >= 0 && cur[t] == n - k + t) --t;
        if (t < 0) break;
        ++cur[t];
        for (int s = t + 1; s < k; ++s) cur[s] = cur[s - 1] + 1;
    }
    return out;
}

IntMat compound(const IntMat& a, int k) {
    auto rows = k_subsets((int)a.rows(), k);
    auto cols = k_subsets((int)a.cols(), k);
    IntMat c = IntMat::Zero((Eigen::Index)rows.size(), (Eigen::Index)cols.size());
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t s = 0; s < cols.size(); ++s) {
            IntMat sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = a(rows[r][i], cols[s][j]);
            c((Eigen::Index)r, (Eigen::Index)s) = det_integer(sub);
        }
    return c;
}

long FiberCohomology::rank(int q) const {
    if (q < 0 || q % 3 != 0) return 0;
    return binom(n, q / 3);
}

FiberCohomology fiber_cohomology(int n) {
    if (n < 0) throw invalid_input("fiber cohomology needs a nonnegative torus rank");
    FiberCohomology f;
    f.n = n;
    return f;
}

} // namespace qtor
