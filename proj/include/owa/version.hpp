#ifndef OWA_VERSION_HPP_
#define OWA_VERSION_HPP_

namespace owa {

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace owa

#endif  // OWA_VERSION_HPP_
