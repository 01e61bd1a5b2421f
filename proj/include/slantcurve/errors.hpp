/*
*   Copyright 2026 the slantcurve authors
*
*   Licensed under the Apache License, Version 2.0 (the "License");
*   you may not use this file except in compliance with the License.
*   You may obtain a copy of the License at
*
*       http://www.apache.org/licenses/LICENSE-2.0
*
*   Unless required by applicable law or agreed to in writing, software
*   distributed under the License is distributed on an "AS IS" BASIS,
*   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
*   See the License for the specific language governing permissions and
*   limitations under the License.
*/
#pragma once

#include <stdexcept>
#include <string>

namespace slant {

/// Base class for all structural errors thrown by the library.
/// Pointwise singularities (vanishing curvature and the like) are reported
/// through sample masks instead; exceptions are reserved for inputs the
/// algorithms cannot proceed with at all.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct TooFewSamples : Error {
    explicit TooFewSamples(const std::string& what) : Error(what) {}
};

struct NonUniformGrid : Error {
    explicit NonUniformGrid(const std::string& what) : Error(what) {}
};

struct RangeOutOfGrid : Error {
    explicit RangeOutOfGrid(const std::string& what) : Error(what) {}
};

struct MaskedRegion : Error {
    explicit MaskedRegion(const std::string& what) : Error(what) {}
};

struct SingularSpeed : Error {
    explicit SingularSpeed(const std::string& what) : Error(what) {}
};

struct DegenerateCurve : Error {
    explicit DegenerateCurve(const std::string& what) : Error(what) {}
};

struct NonOrthonormalSeed : Error {
    explicit NonOrthonormalSeed(const std::string& what) : Error(what) {}
};

struct NegativeKappa : Error {
    explicit NegativeKappa(const std::string& what) : Error(what) {}
};

struct MaskedEverywhere : Error {
    explicit MaskedEverywhere(const std::string& what) : Error(what) {}
};

struct FFloorViolation : Error {
    explicit FFloorViolation(const std::string& what) : Error(what) {}
};

struct VanishingDerivative : Error {
    explicit VanishingDerivative(const std::string& what) : Error(what) {}
};

struct CrossProductDegenerate : Error {
    explicit CrossProductDegenerate(const std::string& what) : Error(what) {}
};

struct EmptyProfile : Error {
    explicit EmptyProfile(const std::string& what) : Error(what) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& what) : Error(what) {}
};

struct OdeBlowUp : Error {
    explicit OdeBlowUp(const std::string& what) : Error(what) {}
};

struct FitDegenerate : Error {
    explicit FitDegenerate(const std::string& what) : Error(what) {}
};

struct InvalidValue : Error {
    explicit InvalidValue(const std::string& what) : Error(what) {}
};

} // namespace slant
