#include "borncount/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace borncount::kernels {

namespace {

constexpr std::size_t kChunk = 4096;          // elements per deterministic chunk
constexpr std::size_t kParallelCutoff = 4 * kChunk;

// Neumaier compensated accumulator
struct Acc {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

// Chunked reduction: term(i) summed over [0, n). Chunk partials are combined
// in chunk order, so the result does not depend on the thread count.
template <class Term>
double chunked_sum(std::size_t n, Term term) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n - 1) / kChunk + 1;
    if (nchunks == 1) {
        Acc a;
        for (std::size_t i = 0; i < n; ++i) a.add(term(i));
        return a.value();
    }
    std::vector<double> partial(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
#endif
    for (std::int64_t ch = 0; ch < static_cast<std::int64_t>(nchunks); ++ch) {
        const std::size_t b = static_cast<std::size_t>(ch) * kChunk;
        const std::size_t e = std::min(n, b + kChunk);
        Acc a;
        for (std::size_t i = b; i < e; ++i) a.add(term(i));
        partial[static_cast<std::size_t>(ch)] = a.value();
    }
    Acc total;
    for (double p : partial) total.add(p);
    return total.value();
}

// Same, for a complex-valued term: real and imaginary parts carry their own
// compensation.
template <class Term>
cplx chunked_sum_cplx(std::size_t n, Term term) {
    if (n == 0) return {0.0, 0.0};
    const std::size_t nchunks = (n - 1) / kChunk + 1;
    std::vector<double> pre(nchunks), pim(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
#endif
    for (std::int64_t ch = 0; ch < static_cast<std::int64_t>(nchunks); ++ch) {
        const std::size_t b = static_cast<std::size_t>(ch) * kChunk;
        const std::size_t e = std::min(n, b + kChunk);
        Acc re, im;
        for (std::size_t i = b; i < e; ++i) {
            cplx t = term(i);
            re.add(t.real());
            im.add(t.imag());
        }
        pre[static_cast<std::size_t>(ch)] = re.value();
        pim[static_cast<std::size_t>(ch)] = im.value();
    }
    Acc re, im;
    for (std::size_t ch = 0; ch < nchunks; ++ch) {
        re.add(pre[ch]);
        im.add(pim[ch]);
    }
    return {re.value(), im.value()};
}

}  // namespace

double sum(std::span<const double> v) {
    return chunked_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

double weighted_sum(std::span<const double> v, std::span<const double> w) {
    return chunked_sum(v.size(), [&](std::size_t i) { return v[i] * w[i]; });
}

double masked_weighted_sum(std::span<const double> v, std::span<const double> w,
                           std::span<const std::uint32_t> idx) {
    return chunked_sum(idx.size(), [&](std::size_t j) {
        const std::uint32_t i = idx[j];
        return v[i] * w[i];
    });
}

cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w) {
    return chunked_sum_cplx(a.size(), [&](std::size_t i) {
        return std::conj(a[i]) * (b[i] * w[i]);
    });
}

double weighted_norm2(std::span<const cplx> a, std::span<const double> w) {
    return chunked_sum(a.size(), [&](std::size_t i) { return std::norm(a[i]) * w[i]; });
}

std::vector<double> inclusive_scan(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    if (n == 0) return out;
    const std::size_t nchunks = (n - 1) / kChunk + 1;
    // pass 1: per-chunk totals
    std::vector<double> chunk_total(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
#endif
    for (std::int64_t ch = 0; ch < static_cast<std::int64_t>(nchunks); ++ch) {
        const std::size_t b = static_cast<std::size_t>(ch) * kChunk;
        const std::size_t e = std::min(n, b + kChunk);
        Acc a;
        for (std::size_t i = b; i < e; ++i) a.add(v[i]);
        chunk_total[static_cast<std::size_t>(ch)] = a.value();
    }
    // serial exclusive scan over chunk totals
    std::vector<double> offset(nchunks);
    Acc run;
    for (std::size_t ch = 0; ch < nchunks; ++ch) {
        offset[ch] = run.value();
        run.add(chunk_total[ch]);
    }
    // pass 2: per-chunk running sums on top of the chunk offset
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (n >= kParallelCutoff)
#endif
    for (std::int64_t ch = 0; ch < static_cast<std::int64_t>(nchunks); ++ch) {
        const std::size_t b = static_cast<std::size_t>(ch) * kChunk;
        const std::size_t e = std::min(n, b + kChunk);
        Acc a;
        a.add(offset[static_cast<std::size_t>(ch)]);
        for (std::size_t i = b; i < e; ++i) {
            a.add(v[i]);
            out[i] = a.value();
        }
    }
    return out;
}

namespace serial {

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double weighted_sum(std::span<const double> v, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return s;
}

double masked_weighted_sum(std::span<const double> v, std::span<const double> w,
                           std::span<const std::uint32_t> idx) {
    double s = 0.0;
    for (std::uint32_t i : idx) s += v[i] * w[i];
    return s;
}

cplx weighted_dot(std::span<const cplx> a, std::span<const cplx> b,
                  std::span<const double> w) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * (b[i] * w[i]);
    return s;
}

double weighted_norm2(std::span<const cplx> a, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i]) * w[i];
    return s;
}

std::vector<double> inclusive_scan(std::span<const double> v) {
    std::vector<double> out(v.size());
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += v[i];
        out[i] = s;
    }
    return out;
}

}  // namespace serial

}  // namespace borncount::kernels
