#pragma once

namespace cpsblotto {

/// git-describe style version baked in at configure time.
const char* version();

}  // namespace cpsblotto
