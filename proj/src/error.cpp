#include "slackfuzz/error.hpp"

namespace slackfuzz {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::NonNumericFeature: return "NonNumericFeature";
    case Errc::SingleClass: return "SingleClass";
    case Errc::EmptyData: return "EmptyData";
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::MoreThanTwoClasses: return "MoreThanTwoClasses";
    case Errc::UnknownPositiveLabel: return "UnknownPositiveLabel";
    case Errc::TooFewSamplesPerClass: return "TooFewSamplesPerClass";
    case Errc::DegenerateSplit: return "DegenerateSplit";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::AllZeroCostClass: return "AllZeroCostClass";
    case Errc::AllMinorityExcluded: return "AllMinorityExcluded";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NoPositives: return "NoPositives";
    case Errc::DegenerateStatistic: return "DegenerateStatistic";
    case Errc::UnsupportedModelCount: return "UnsupportedModelCount";
    case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace slackfuzz
