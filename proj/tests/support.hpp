#pragma once

#include <string>

#include "dioc/frontend.hpp"

namespace dioc::test {

inline DiocProc prog(const std::string& src) { return parse_dioc(src).proc; }

inline std::string corpus(const std::string& rel) { return std::string(DIOC_CORPUS_DIR) + "/" + rel; }

inline LocalState vars(std::initializer_list<std::pair<const std::string, Value>> init) { return LocalState(init); }

}  // namespace dioc::test
