// Surface-syntax printer. Output re-parses to an alpha-identical AST.
#pragma once

#include <string>

#include "act/ast.hpp"

namespace act {

std::string pretty(const Ref& r);
std::string pretty(const Expr& e);
std::string pretty(const MappingExpr& m);
std::string pretty(const SlotExpr& se);
std::string pretty(const Create& c);
std::string pretty(const Update& u);
std::string pretty(const Constructor& c);
std::string pretty(const Transition& t);
std::string pretty(const Contract& c);
std::string pretty(const Spec& s);

}  // namespace act
