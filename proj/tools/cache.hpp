#pragma once

#include <memory>
#include <string>

#include "mbl/character_table.hpp"

namespace mbl {

std::string sha256_hex(const std::string& data);

/// $MBL_CACHE, else $XDG_CACHE_HOME/mbl, else $HOME/.cache/mbl.
std::string cache_root();

/// Character table of g, read from or written to the cache under the SHA-256
/// of the group file's bytes. Unreadable or stale entries are recomputed.
std::shared_ptr<const CharacterTable> cached_character_table(const PermGroup& g, const std::string& file_bytes);

}  // namespace mbl
