#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slackfuzz {

/// Failure categories raised by the library. Each maps to one documented error
/// path of the public operations.
enum class Errc {
    MalformedHeader,
    NonNumericFeature,
    SingleClass,
    EmptyData,
    RaggedRows,
    MoreThanTwoClasses,
    UnknownPositiveLabel,
    TooFewSamplesPerClass,
    DegenerateSplit,
    DimensionMismatch,
    LengthMismatch,
    AllZeroCostClass,
    AllMinorityExcluded,
    InvalidArgument,
    NoPositives,
    DegenerateStatistic,
    UnsupportedModelCount,
    IoError,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace slackfuzz
