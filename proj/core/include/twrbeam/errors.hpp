// twrbeam - distributed beamforming and achievable rate regions for
// two-way amplify-and-forward relay networks
// Copyright (C) 2026 the twrbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TWRBEAM_ERRORS_HPP
#define TWRBEAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twr {

/// Vector/matrix size mismatch between related inputs.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A scalar argument is outside its documented range.
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A value is outside the mathematical domain of the requested map.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The channel realization makes the requested optimization meaningless
/// (for example both sources silent on every relay).
struct DegenerateChannelError : std::runtime_error {
    explicit DegenerateChannelError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated a documented precondition.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// An iterative numerical routine failed to reach its tolerance.
struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace twr

#endif // TWRBEAM_ERRORS_HPP
