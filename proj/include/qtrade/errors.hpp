#pragma once

#include <stdexcept>
#include <string>

namespace qtrade {

// Base for every failure class the library raises. The CLI maps these to
// exit codes; callers that want finer handling catch the concrete types.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroInversion : Error {
    explicit ZeroInversion(const std::string& msg) : Error(msg) {}
};

struct AmbientMismatch : Error {
    explicit AmbientMismatch(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& msg) : Error(msg) {}
};

struct InadmissibleParams : Error {
    explicit InadmissibleParams(const std::string& msg) : Error(msg) {}
};

struct ParamsMismatch : Error {
    explicit ParamsMismatch(const std::string& msg) : Error(msg) {}
};

struct NotATotalTradeSet : Error {
    explicit NotATotalTradeSet(const std::string& msg) : Error(msg) {}
};

struct EmptyReferenceSet : Error {
    explicit EmptyReferenceSet(const std::string& msg) : Error(msg) {}
};

struct DegenerateShellStructure : Error {
    explicit DegenerateShellStructure(const std::string& msg) : Error(msg) {}
};

struct ScaleGuardExceeded : Error {
    explicit ScaleGuardExceeded(const std::string& msg) : Error(msg) {}
};

}  // namespace qtrade
