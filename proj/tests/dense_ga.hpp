#pragma once

// Dense multivector oracle for the motor tests. Products are formed by writing
// both blades as generator words, bubble-sorting the concatenation and
// contracting equal neighbours with the metric, which is a different route
// from the library's bitmask sign formula.

#include <cstddef>
#include <utility>
#include <vector>

namespace gam::test {

class DenseAlgebra {
public:
    explicit DenseAlgebra(std::vector<int> metric) : metric_(std::move(metric)) {}

    std::size_t generators() const { return metric_.size(); }
    std::size_t size() const { return std::size_t{1} << metric_.size(); }

    // (sign, mask) of blade a times blade b.
    std::pair<int, unsigned> multiply(unsigned a, unsigned b) const {
        std::vector<int> word;
        for (std::size_t i = 0; i < generators(); ++i)
            if ((a >> i) & 1U) word.push_back(static_cast<int>(i));
        for (std::size_t i = 0; i < generators(); ++i)
            if ((b >> i) & 1U) word.push_back(static_cast<int>(i));
        int sign = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i + 1 < word.size(); ++i) {
                if (word[i] > word[i + 1]) {
                    std::swap(word[i], word[i + 1]);
                    sign = -sign;
                    changed = true;
                } else if (word[i] == word[i + 1]) {
                    sign *= metric_[static_cast<std::size_t>(word[i])];
                    word.erase(word.begin() + static_cast<std::ptrdiff_t>(i), word.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                    changed = true;
                    break;
                }
            }
        }
        unsigned mask = 0;
        for (int g : word) mask |= 1U << g;
        return {sign, mask};
    }

private:
    std::vector<int> metric_;
};

struct Dense {
    const DenseAlgebra* alg = nullptr;
    std::vector<double> c;

    explicit Dense(const DenseAlgebra& a) : alg(&a), c(a.size(), 0.0) {}

    static Dense blade(const DenseAlgebra& a, unsigned mask, double coef = 1.0) {
        Dense d(a);
        d.c[mask] = coef;
        return d;
    }

    Dense operator*(const Dense& o) const {
        Dense r(*alg);
        for (unsigned i = 0; i < c.size(); ++i) {
            if (c[i] == 0.0) continue;
            for (unsigned j = 0; j < o.c.size(); ++j) {
                if (o.c[j] == 0.0) continue;
                const auto [s, m] = alg->multiply(i, j);
                r.c[m] += s * c[i] * o.c[j];
            }
        }
        return r;
    }
    Dense operator+(const Dense& o) const {
        Dense r(*alg);
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Dense operator-(const Dense& o) const {
        Dense r(*alg);
        for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
};

}  // namespace gam::test
