#include "corpus.hpp"

#include <random>

namespace twinmat::testing {

std::vector<CorpusCase> standard_corpus() {
    const int sides[] = {8, 12, 16, 24, 32, 40, 64, 100, 128, 200, 256, 300, 512};
    std::vector<CorpusCase> out;
    std::uint64_t seed = 1;
    while (out.size() < 200) {
        for (int n : sides) {
            if (out.size() == 200) break;
            out.push_back({n, static_cast<int>(out.size() % 4), seed++});
        }
    }
    return out;
}

CorpusItem materialize(const CorpusCase& c) {
    auto gen = generate(c.n, c.d, c.seed);
    auto dec = extract_decomposition(gen.matrix, gen.sequence);
    return {c, std::move(gen.matrix), std::move(gen.sequence), std::move(dec)};
}

RectangleDecomposition random_decomposition(int n, int attempts, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RectangleDecomposition dec;
    dec.n = n;
    BinaryMatrix used(n);
    auto pick = [&](int hi) { return static_cast<int>(rng() % static_cast<std::uint64_t>(hi)) + 1; };
    for (int t = 0; t < attempts; ++t) {
        const int r1 = pick(n), c1 = pick(n);
        const int r2 = std::min(n, r1 + pick(std::max(1, n / 3)) - 1);
        const int c2 = std::min(n, c1 + pick(std::max(1, n / 3)) - 1);
        bool free = true;
        for (int i = r1; i <= r2 && free; ++i)
            for (int j = c1; j <= c2 && free; ++j) free = !used.get(i, j);
        if (!free) continue;
        for (int i = r1; i <= r2; ++i)
            for (int j = c1; j <= c2; ++j) used.set(i, j, true);
        dec.rects.push_back({r1, r2, c1, c2});
    }
    return dec;
}

}  // namespace twinmat::testing
