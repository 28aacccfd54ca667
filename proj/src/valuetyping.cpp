#include "act/valuetyping.hpp"

#include <set>

namespace act {

namespace {

// Guard for V-AddrIsContract recursion: with a well-founded Sigma the slot
// types strictly decrease, but adversarial stores and cyclic Sigmas fed by
// the metatheory tests must still terminate.
struct Guard {
  std::set<std::pair<Addr, std::string>> in_progress;
};

TypeJudgmentResult loc_contract_rec(const SigmaView& sig, const State& s, Addr l,
                                    const std::string& A, Guard& g);

TypeJudgmentResult value_sigma_rec(const SigmaView& sig, const State& s, const Value& v,
                                   const SlotType& st, Guard& g) {
  if (st.is_mapping()) return value_has_mu(v, st.as_mapping());  // V-MappingVal
  if (!v.is_addr())
    return TypeJudgmentResult::no("expected an address for " + to_string(st) +
                                  ", got " + v.to_string() + " [V-AddrIsContract]");
  return loc_contract_rec(sig, s, v.as_addr(), st.contract_name(), g);
}

TypeJudgmentResult loc_contract_rec(const SigmaView& sig, const State& s, Addr l,
                                    const std::string& A, Guard& g) {
  auto key = std::make_pair(l, A);
  if (g.in_progress.count(key))
    return TypeJudgmentResult::no("cyclic store reference at @" + std::to_string(l) +
                                  " : " + A + " [V-AddrIsContract]");
  if (!s.contains(l))
    return TypeJudgmentResult::no("@" + std::to_string(l) + " not allocated [V-AddrIsContract]");
  const StorageLayout* layout = sig.layout(A);
  if (!layout)
    return TypeJudgmentResult::no("contract " + A + " not in Sigma [V-AddrIsContract]");
  const ContractInstance& inst = s.at(l);
  if (inst.type != A)
    return TypeJudgmentResult::no("@" + std::to_string(l) + " has type " + inst.type +
                                  ", expected " + A + " [V-AddrIsContract]");
  // dom(s(l)) must coincide with the layout's domain.
  if (inst.vars.size() != layout->size())
    return TypeJudgmentResult::no("@" + std::to_string(l) +
                                  " field domain differs from layout of " + A +
                                  " [V-AddrIsContract]");
  g.in_progress.insert(key);
  for (const auto& [x, st] : *layout) {
    auto it = inst.vars.find(x);
    if (it == inst.vars.end()) {
      g.in_progress.erase(key);
      return TypeJudgmentResult::no("@" + std::to_string(l) + " missing field " + x +
                                    " [V-AddrIsContract]");
    }
    TypeJudgmentResult r = value_sigma_rec(sig, s, it->second, st, g);
    if (!r) {
      g.in_progress.erase(key);
      return TypeJudgmentResult::no("@" + std::to_string(l) + "." + x + ": " + r.failure);
    }
  }
  g.in_progress.erase(key);
  return TypeJudgmentResult::yes();
}

}  // namespace

TypeJudgmentResult value_has_base(const Value& v, const BaseType& beta) {
  switch (beta.sort) {
    case BaseType::Sort::Int: {
      if (!v.is_int())
        return TypeJudgmentResult::no(v.to_string() + " is not an integer [V-Int]");
      const IntType& i = *beta.int_type;
      if (i.is_math()) return TypeJudgmentResult::yes();
      if (v.as_int() < i.min() || v.as_int() > i.max())
        return TypeJudgmentResult::no(v.as_int().str() + " outside " + to_string(i) + " [V-Int]");
      return TypeJudgmentResult::yes();
    }
    case BaseType::Sort::Bool:
      if (!v.is_bool())
        return TypeJudgmentResult::no(v.to_string() + " is not a boolean [V-Bool]");
      return TypeJudgmentResult::yes();
    default:
      if (!v.is_addr())
        return TypeJudgmentResult::no(v.to_string() + " is not an address [V-Addr]");
      return TypeJudgmentResult::yes();
  }
}

TypeJudgmentResult value_has_mu(const Value& v, const MappingType& mu) {
  if (mu.is_base()) return value_has_base(v, mu.as_base());
  const auto& m = mu.as_map();
  if (!v.is_mapping())
    return TypeJudgmentResult::no(v.to_string() + " is not a mapping [V-Mapping]");
  const auto& rep = v.as_mapping();
  if (rep.key_sort != meta_sort(m.key))
    return TypeJudgmentResult::no("mapping key sort mismatch [V-Mapping]");
  TypeJudgmentResult r = value_has_mu(rep.def, m.value);
  if (!r) return TypeJudgmentResult::no("default: " + r.failure);
  for (const auto& [k, val] : rep.table) {
    if (TypeJudgmentResult kr = value_has_base(k, m.key); !kr)
      return TypeJudgmentResult::no("key " + k.to_string() + ": " + kr.failure);
    if (TypeJudgmentResult vr = value_has_mu(val, m.value); !vr)
      return TypeJudgmentResult::no("at key " + k.to_string() + ": " + vr.failure);
  }
  return TypeJudgmentResult::yes();
}

TypeJudgmentResult value_has_abi(const SigmaView& sig, const State& s, const Value& v,
                                 const AbiType& alpha) {
  if (alpha.is_base()) return value_has_base(v, alpha.as_base());
  Guard g;
  if (!v.is_addr())
    return TypeJudgmentResult::no(v.to_string() + " is not an address [V-AddrIsContract]");
  return loc_contract_rec(sig, s, v.as_addr(), alpha.contract(), g);
}

TypeJudgmentResult value_has_sigma(const SigmaView& sig, const State& s, const Value& v,
                                   const SlotType& st) {
  Guard g;
  return value_sigma_rec(sig, s, v, st, g);
}

TypeJudgmentResult value_has_opt_sigma(const SigmaView& sig, const State& s, const Value& v,
                                       const std::optional<SlotType>& st) {
  if (!st) return TypeJudgmentResult::yes();  // V-None
  return value_has_sigma(sig, s, v, *st);
}

TypeJudgmentResult loc_has_contract(const SigmaView& sig, const State& s, Addr l,
                                    const std::string& contract) {
  Guard g;
  return loc_contract_rec(sig, s, l, contract, g);
}

TypeJudgmentResult env_has_iface(const SigmaView& sig, const State& s, const Env& env,
                                 const InterfaceEnv& iface) {
  // dom(env) = dom(iface) + {caller, origin, callvalue}, exactly.
  size_t expect = iface.size() + 3;
  if (env.size() != expect)
    return TypeJudgmentResult::no("environment domain mismatch [V-Env]");
  for (const char* fixed : {"caller", "origin", "callvalue"}) {
    if (!env.count(fixed))
      return TypeJudgmentResult::no(std::string("environment missing ") + fixed + " [V-Env]");
  }
  if (auto r = value_has_base(env.at("caller"), BaseType::address()); !r)
    return TypeJudgmentResult::no("caller: " + r.failure);
  if (auto r = value_has_base(env.at("origin"), BaseType::address()); !r)
    return TypeJudgmentResult::no("origin: " + r.failure);
  if (auto r = value_has_base(env.at("callvalue"), BaseType::integer(uint256())); !r)
    return TypeJudgmentResult::no("callvalue: " + r.failure);
  for (const auto& [x, alpha] : iface) {
    auto it = env.find(x);
    if (it == env.end())
      return TypeJudgmentResult::no("environment missing " + x + " [V-Env]");
    if (auto r = value_has_abi(sig, s, it->second, alpha); !r)
      return TypeJudgmentResult::no(x + ": " + r.failure);
  }
  return TypeJudgmentResult::yes();
}

}  // namespace act
