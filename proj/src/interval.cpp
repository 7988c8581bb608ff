#include "hhk/interval.hpp"

#include <ostream>

namespace hhk {

std::ostream& operator<<(std::ostream& os, const Interval& a) {
    if (a.is_empty()) return os << "[empty]";
    return os << '[' << a.lo() << ", " << a.hi() << ']';
}

}  // namespace hhk
