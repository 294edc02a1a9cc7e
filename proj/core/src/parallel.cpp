#include "costpath/parallel.hpp"

#include <cstdlib>
#include <string>

namespace costpath {

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("COSTPATH_THREADS")) {
        try {
            const int parsed = std::stoi(env);
            if (parsed > 0) return parsed;
        } catch (...) {
            // fall through to hardware default on unparseable values
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace costpath
