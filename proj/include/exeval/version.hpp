#pragma once

namespace exeval {

inline constexpr const char* kVersion = "0.1.0";

// Name of the pseudo-random generator algorithm, echoed in all experiment
// metadata so runs can be replayed exactly.
inline constexpr const char* kRngName = "splitmix64";

}  // namespace exeval
