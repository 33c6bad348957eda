#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "formkit/form.hpp"
#include "formkit/top.hpp"

namespace support {

inline formkit::top::FiniteTopology topo(std::size_t n, std::initializer_list<formkit::top::Subset> opens) {
  return formkit::top::FiniteTopology::from_opens(n, std::vector<formkit::top::Subset>(opens));
}

inline formkit::Element index_of(const formkit::top::TopologyFibre& fib,
                                 std::initializer_list<formkit::top::Subset> opens) {
  return fib.index_of(topo(fib.points, opens));
}

inline formkit::MorphismId morphism(const formkit::FormInstance& F, const std::string& name) {
  return F.base().morphism_id(name);
}

}  // namespace support
