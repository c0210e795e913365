#include <string_view>

#include "core/sobol.hpp"

namespace sobolhd {

namespace embedded {
extern const char kDirectionData[];
extern const unsigned long long kDirectionDataSize;
}  // namespace embedded

const DirectionTable& DirectionTable::builtin() {
    static const DirectionTable table =
        parse_text(std::string_view(embedded::kDirectionData, embedded::kDirectionDataSize),
                   kMaxSupportedDimensions, "<builtin>");
    return table;
}

}  // namespace sobolhd
