#include "homog/scalar.hpp"

namespace homog {

std::string to_string(ScalarKind kind)
{
    switch (kind) {
    case ScalarKind::rational: return "rational";
    case ScalarKind::real: return "real";
    case ScalarKind::complex: return "complex";
    }
    return "unknown";
}

} // namespace homog
