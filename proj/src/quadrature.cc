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

#include "cvcluster/quadrature.h"

#include <cmath>
#include <cstdio>

namespace cvcluster {

char quadrature_char(Quadrature q) {
    return q == Quadrature::X ? 'x' : 'y';
}

std::string_view direction_name(SqueezeDirection d) {
    return d == SqueezeDirection::MomentumSqueezed ? "momentum" : "position";
}

static std::string format_coeff(double v) {
    if (std::abs(std::abs(v) - std::sqrt(2.0)) < 1e-12) {
        return "sqrt2";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string combo_to_string(const Combo &combo) {
    if (combo.empty()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &t : combo) {
        double c = t.coeff;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            c = std::abs(c);
        }
        out += format_coeff(c);
        out += '*';
        out += quadrature_char(t.kind);
        out += std::to_string(t.mode);
        first = false;
    }
    return out;
}

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSize:
            return "invalid-size";
        case ErrorCode::InvalidIndex:
            return "invalid-index";
        case ErrorCode::ConsumedMode:
            return "consumed-mode";
        case ErrorCode::SelfInteraction:
            return "self-interaction";
        case ErrorCode::Domain:
            return "domain";
        case ErrorCode::RecordOwnership:
            return "record-ownership";
        case ErrorCode::InternalConsistency:
            return "internal-consistency";
        case ErrorCode::SingularMeasurement:
            return "singular-measurement";
        case ErrorCode::InvalidGraph:
            return "invalid-graph";
        case ErrorCode::ProtocolPrecondition:
            return "protocol-precondition";
        case ErrorCode::Parse:
            return "parse";
        case ErrorCode::Runtime:
            return "runtime";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message) : std::runtime_error(message), code_(code) {
}

}  // namespace cvcluster
