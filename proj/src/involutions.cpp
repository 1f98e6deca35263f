#include "homog/involutions.hpp"

namespace homog {

std::string to_string(InvolutionClass c)
{
    switch (c) {
    case InvolutionClass::identity: return "identity";
    case InvolutionClass::reflection: return "reflection";
    case InvolutionClass::point_symmetry: return "point_symmetry";
    }
    return "unknown";
}

} // namespace homog
