#ifndef IPLR_VERSION_HPP
#define IPLR_VERSION_HPP

namespace iplr {

inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace iplr

#endif
