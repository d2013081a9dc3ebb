// AVX2+FMA variants of the inner-loop kernels. Compiled with -mavx2 -mfma
// on x86-64 only; dispatch.cpp makes sure they are never called on CPUs
// without those features.

#include "speclust/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace speclust::simd::detail {

namespace {

double sq_dist_avx2(const double* a, const double* b, std::size_t d) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= d; i += 4) {
        const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(diff, diff, acc);
    }
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    double sum = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < d; ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

// exp for 4 doubles, Cephes style: r = x - n*ln2 with ln2 split in two,
// e^r from a rational polynomial, then scale by 2^n. The 2^n scaling is
// applied in two halves so exponent arithmetic stays in range through the
// gradual-underflow region, and lanes past the zero boundary of std::exp
// are flushed to exactly zero. Accuracy is within a few ulp of std::exp for
// normal results.
__m256d exp_pd(__m256d x) {
    const __m256d exp_hi = _mm256_set1_pd(709.437);
    const __m256d zero_bound = _mm256_set1_pd(-745.133219101941108);  // ln(2^-1075)
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);

    const __m256d keep = _mm256_cmp_pd(x, zero_bound, _CMP_GE_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(-746.0)), exp_hi);

    __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(log2e, x, half));
    __m256d r = _mm256_fnmadd_pd(n, c1, x);
    r = _mm256_fnmadd_pd(n, c2, r);

    const __m256d r2 = _mm256_mul_pd(r, r);
    __m256d px = _mm256_fmadd_pd(p0, r2, p1);
    px = _mm256_fmadd_pd(px, r2, p2);
    px = _mm256_mul_pd(px, r);
    __m256d qx = _mm256_fmadd_pd(q0, r2, q1);
    qx = _mm256_fmadd_pd(qx, r2, q2);
    qx = _mm256_fmadd_pd(qx, r2, q3);
    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, one);

    // 2^n in two halves: n = n1 + n2 with n1 = floor(n/2).
    const __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(n, half));
    const __m256d n2 = _mm256_sub_pd(n, n1);
    const auto pow2 = [](__m256d k) {
        const __m128i k32 = _mm256_cvtpd_epi32(k);
        __m256i k64 = _mm256_cvtepi32_epi64(k32);
        k64 = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
        return _mm256_castsi256_pd(k64);
    };
    e = _mm256_mul_pd(e, pow2(n1));
    e = _mm256_mul_pd(e, pow2(n2));
    return _mm256_and_pd(e, keep);
}

void exp_neg_scale_avx2(const double* in, double* out, std::size_t count, double inv_beta) {
    const __m256d scale = _mm256_set1_pd(-inv_beta);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const __m256d x = _mm256_mul_pd(_mm256_loadu_pd(in + i), scale);
        _mm256_storeu_pd(out + i, exp_pd(x));
    }
    if (i < count) {
        // Padded tail through the same vector path, so results depend only
        // on the value and not on the element's position.
        alignas(32) double buf[4] = {0.0, 0.0, 0.0, 0.0};
        for (std::size_t j = i; j < count; ++j) buf[j - i] = in[j];
        const __m256d x = _mm256_mul_pd(_mm256_load_pd(buf), scale);
        _mm256_store_pd(buf, exp_pd(x));
        for (std::size_t j = i; j < count; ++j) out[j] = buf[j - i];
    }
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{&sq_dist_avx2, &exp_neg_scale_avx2};
    return table;
}

}  // namespace speclust::simd::detail

#else

namespace speclust::simd::detail {

const KernelTable& avx2_table() { return scalar_table(); }

}  // namespace speclust::simd::detail

#endif
