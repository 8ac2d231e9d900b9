#include "critcurve/error.hpp"

namespace critcurve {

void fail(const std::string& what) { throw Error(what); }

}  // namespace critcurve
