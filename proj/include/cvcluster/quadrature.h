// Copyright 2026 The cvcluster Authors
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

#ifndef CVCLUSTER_QUADRATURE_H
#define CVCLUSTER_QUADRATURE_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvcluster {

/// Which quadrature of a mode: position-like X or momentum-like Y, with [X, Y] = i.
enum class Quadrature { X, Y };

/// momentum_squeezed maps X -> e^{+r} X, Y -> e^{-r} Y; position_squeezed is the transpose.
enum class SqueezeDirection { MomentumSqueezed, PositionSqueezed };

constexpr Quadrature conjugate(Quadrature q) {
    return q == Quadrature::X ? Quadrature::Y : Quadrature::X;
}

char quadrature_char(Quadrature q);
std::string_view direction_name(SqueezeDirection d);

/// One weighted quadrature of an (1-based) mode.
struct ComboTerm {
    double coeff;
    std::size_t mode;
    Quadrature kind;

    bool operator==(const ComboTerm &) const = default;
};

/// A linear combination of quadratures, e.g. Y_1 - X_2.
using Combo = std::vector<ComboTerm>;

/// Renders as "1*y1 - 1*x2", the same syntax the scenario language accepts.
std::string combo_to_string(const Combo &combo);

enum class ErrorCode {
    InvalidSize,
    InvalidIndex,
    ConsumedMode,
    SelfInteraction,
    Domain,
    RecordOwnership,
    InternalConsistency,
    SingularMeasurement,
    InvalidGraph,
    ProtocolPrecondition,
    Parse,
    Runtime,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const {
        return code_;
    }

   private:
    ErrorCode code_;
};

}  // namespace cvcluster

#endif
