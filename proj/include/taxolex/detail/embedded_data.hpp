#pragma once

#include <cstddef>

namespace taxolex::detail {

struct EmbeddedFile {
    const char* path;  // relative to data/
    const char* body;
};

const EmbeddedFile* embedded_files();
std::size_t embedded_file_count();

}  // namespace taxolex::detail
