#pragma once

// Canonical component names. A name is the base letter, one "[(1)]" group
// when the tensor has upper vertical slots, the lower indices and then the
// upper indices followed by one "(1)" per lower vertical slot:
//   T[1,2]^[1]   P[(1)][1,(2)]^[(1),(1)]   d[(1)][(2)]^[(1),(1)]
// Tokens: time "1", spatial i as the number, vertical (i) in parentheses.

#include <span>
#include <string>
#include <string_view>

#include "jetgeo/dtensor.hpp"

namespace jetgeo {

std::string component_name(std::string_view base, const Signature& sig,
                           std::span<const int> idx);
std::string component_name(std::string_view base, const DTensor& T, std::size_t flat);

// Signatures of the connection blocks and metric objects, used for naming.
namespace signatures {
inline const Signature Gbar{kUpTime, kDownTime, kDownTime};
inline const Signature G{kUpSpace, kDownSpace, kDownTime};
inline const Signature Gv{kUpVert, kDownVert, kDownTime};
inline const Signature Lbar{kUpTime, kDownTime, kDownSpace};
inline const Signature L{kUpSpace, kDownSpace, kDownSpace};
inline const Signature Lv{kUpVert, kDownVert, kDownSpace};
inline const Signature Cbar{kUpTime, kDownTime, kDownVert};
inline const Signature C{kUpSpace, kDownSpace, kDownVert};
inline const Signature Cv{kUpVert, kDownVert, kDownVert};
inline const Signature M{kUpVert, kDownTime};
inline const Signature N{kUpVert, kDownSpace};
inline const Signature H{kUpTime, kDownTime, kDownTime};
inline const Signature gamma{kUpSpace, kDownSpace, kDownSpace};
inline const Signature riemann{kUpSpace, kDownSpace, kDownSpace, kDownSpace};
inline const Signature F{kDownVert, kDownSpace};
}  // namespace signatures

}  // namespace jetgeo
