// Copyright 2026 The Moyal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace moyal::detail {

// Unscaled transforms:
//   forward:  X_k = sum_n x_n exp(-2 pi i k n / N)
//   backward: x_n = sum_k X_k exp(+2 pi i k n / N)
class Fft {
 public:
  Fft() { fft_.SetFlag(Eigen::FFT<double>::Unscaled); }

  void forward(std::vector<std::complex<double>>& out,
               const std::vector<std::complex<double>>& in) {
    fft_.fwd(out, in);
  }
  void backward(std::vector<std::complex<double>>& out,
                const std::vector<std::complex<double>>& in) {
    fft_.inv(out, in);
  }

 private:
  Eigen::FFT<double> fft_;
};

}  // namespace moyal::detail
