#pragma once

#include <mutex>
#include <vector>

namespace zlab {

// FFTW's planner is not thread-safe; every plan creation and destruction in
// this library takes this lock.
std::mutex& fftw_planner_mutex();

// Smallest n' >= n of the form 2^a 3^b 5^c 7^e.
int good_fft_size(int n);

// Full linear convolution of two dense real arrays (row-major, last axis
// fastest). Output shape is shape_a + shape_b - 1 per axis.
std::vector<double> convolve_fft(const std::vector<double>& a, const std::vector<int>& shape_a,
                                 const std::vector<double>& b, const std::vector<int>& shape_b);

std::vector<double> convolve_direct(const std::vector<double>& a, const std::vector<int>& shape_a,
                                    const std::vector<double>& b, const std::vector<int>& shape_b);

}  // namespace zlab
