#include "zlab/fft.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <memory>

#include <fftw3.h>

#include "zlab/errors.hpp"

namespace zlab {

std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

int good_fft_size(int n) {
  if (n < 1) return 1;
  for (int m = n;; ++m) {
    int r = m;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

namespace {

std::size_t volume(const std::vector<int>& shape) {
  std::size_t v = 1;
  for (int s : shape) v *= static_cast<std::size_t>(s);
  return v;
}

std::vector<std::size_t> strides(const std::vector<int>& shape) {
  std::vector<std::size_t> st(shape.size(), 1);
  for (std::size_t j = shape.size(); j-- > 1;) st[j - 1] = st[j] * static_cast<std::size_t>(shape[j]);
  return st;
}

void check_shapes(const std::vector<double>& a, const std::vector<int>& sa, const std::vector<double>& b,
                  const std::vector<int>& sb) {
  if (sa.empty() || sa.size() != sb.size()) throw DimensionError("convolution: shape rank mismatch");
  if (volume(sa) != a.size() || volume(sb) != b.size()) throw DimensionError("convolution: data/shape mismatch");
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::vector<double> convolve_direct(const std::vector<double>& a, const std::vector<int>& sa,
                                    const std::vector<double>& b, const std::vector<int>& sb) {
  check_shapes(a, sa, b, sb);
  const std::size_t d = sa.size();
  std::vector<int> so(d);
  for (std::size_t j = 0; j < d; ++j) so[j] = sa[j] + sb[j] - 1;
  const auto sta = strides(sa), stb = strides(sb), sto = strides(so);
  std::vector<double> out(volume(so), 0.0);

  // Offset in the output of each b entry, so the inner loop is a plain add.
  std::vector<std::size_t> boff(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::size_t rem = i, off = 0;
    for (std::size_t j = 0; j < d; ++j) {
      off += (rem / stb[j]) * sto[j];
      rem %= stb[j];
    }
    boff[i] = off;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    std::size_t rem = i, base = 0;
    for (std::size_t j = 0; j < d; ++j) {
      base += (rem / sta[j]) * sto[j];
      rem %= sta[j];
    }
    for (std::size_t k = 0; k < b.size(); ++k) out[base + boff[k]] += a[i] * b[k];
  }
  return out;
}

std::vector<double> convolve_fft(const std::vector<double>& a, const std::vector<int>& sa,
                                 const std::vector<double>& b, const std::vector<int>& sb) {
  check_shapes(a, sa, b, sb);
  const std::size_t d = sa.size();
  std::vector<int> so(d), sp(d);
  for (std::size_t j = 0; j < d; ++j) {
    so[j] = sa[j] + sb[j] - 1;
    sp[j] = good_fft_size(so[j]);
  }
  const std::size_t nreal = volume(sp);
  std::vector<int> sc = sp;
  sc[d - 1] = sp[d - 1] / 2 + 1;
  const std::size_t ncplx = volume(sc);

  std::unique_ptr<double, FftwFree> ra(fftw_alloc_real(nreal)), rb(fftw_alloc_real(nreal));
  std::unique_ptr<fftw_complex, FftwFree> ca(fftw_alloc_complex(ncplx)), cb(fftw_alloc_complex(ncplx));
  if (!ra || !rb || !ca || !cb) throw NumericalError("FFT buffer allocation failed");

  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd = fftw_plan_dft_r2c(static_cast<int>(d), sp.data(), ra.get(), ca.get(), FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r(static_cast<int>(d), sp.data(), ca.get(), ra.get(), FFTW_ESTIMATE);
  }
  if (!fwd || !bwd) throw NumericalError("FFTW planning failed");

  const auto stp = strides(sp);
  auto scatter = [&](const std::vector<double>& src, const std::vector<int>& ss, double* dst) {
    std::fill(dst, dst + nreal, 0.0);
    const auto sts = strides(ss);
    for (std::size_t i = 0; i < src.size(); ++i) {
      std::size_t rem = i, off = 0;
      for (std::size_t j = 0; j < d; ++j) {
        off += (rem / sts[j]) * stp[j];
        rem %= sts[j];
      }
      dst[off] = src[i];
    }
  };
  scatter(a, sa, ra.get());
  fftw_execute_dft_r2c(fwd, ra.get(), ca.get());
  scatter(b, sb, rb.get());
  fftw_execute_dft_r2c(fwd, rb.get(), cb.get());
  const double scale = 1.0 / static_cast<double>(nreal);
  for (std::size_t i = 0; i < ncplx; ++i) {
    const std::complex<double> x(ca.get()[i][0], ca.get()[i][1]), y(cb.get()[i][0], cb.get()[i][1]);
    const std::complex<double> z = x * y * scale;
    ca.get()[i][0] = z.real();
    ca.get()[i][1] = z.imag();
  }
  fftw_execute_dft_c2r(bwd, ca.get(), ra.get());

  std::vector<double> out(volume(so));
  const auto sto = strides(so);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::size_t rem = i, off = 0;
    for (std::size_t j = 0; j < d; ++j) {
      off += (rem / sto[j]) * stp[j];
      rem %= sto[j];
    }
    out[i] = ra.get()[off];
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  return out;
}

}  // namespace zlab
