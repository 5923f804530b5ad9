#include "taxolex/sequence.hpp"

#include "taxolex/errors.hpp"

namespace taxolex {

std::string to_string(Approach a) {
    switch (a) {
        case Approach::Raw: return "raw";
        case Approach::Collapse: return "collapse";
        case Approach::Plus: return "plus";
        case Approach::Numeric: return "numeric";
    }
    return "raw";
}

Approach approach_from_string(const std::string& s) {
    if (s == "raw" || s == "none") return Approach::Raw;
    if (s == "collapse") return Approach::Collapse;
    if (s == "plus") return Approach::Plus;
    if (s == "numeric") return Approach::Numeric;
    throw ValidationError("unknown approach '" + s + "' (expected collapse, plus or numeric)");
}

std::string SequenceItem::display() const {
    std::string out = terminal;
    if (!qualifier.empty()) out += ":" + qualifier;
    if (plus) out += "+";
    if (repeat_count > 1) out += std::to_string(repeat_count);
    return out;
}

}  // namespace taxolex
