#ifndef LGSE_VERSION_H_
#define LGSE_VERSION_H_

#include <string_view>

namespace lgse {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace lgse

#endif  // LGSE_VERSION_H_
