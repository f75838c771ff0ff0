// Copyright 2026 The qident Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include "qident/simulate.h"

namespace qident {

RandomStream trial_stream(std::uint64_t base_seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return RandomStream(seq);
}

StateVector haar_state(std::size_t d, RandomStream &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector v(d);
    for (std::size_t i = 0; i < d; ++i) {
        double re = gauss(rng);
        double im = gauss(rng);
        v[i] = cplx(re, im);
    }
    double norm = v.norm();
    if (norm == 0.0) {
        return haar_state(d, rng);
    }
    return v / norm;
}

DenseOperator haar_unitary(std::size_t d, RandomStream &rng) {
    std::normal_distribution<double> gauss(0.0, std::numbers::sqrt2 / 2);
    DenseOperator z(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double re = gauss(rng);
            double im = gauss(rng);
            z(i, j) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<DenseOperator> qr(z);
    DenseOperator q = qr.householderQ();
    DenseOperator r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t j = 0; j < d; ++j) {
        cplx diag = r(j, j);
        double mag = std::abs(diag);
        q.col(j) *= mag > 0 ? diag / mag : cplx(1.0);
    }
    return q;
}

}  // namespace qident
