#include "act/enumerate.hpp"

#include <algorithm>
#include <set>

#include "act/valuetyping.hpp"

namespace act {

std::vector<BigInt> BoundsConfig::int_samples(const IntType& t) const {
  std::vector<BigInt> raw;
  if (!custom_int_samples.empty()) {
    raw = custom_int_samples;
  } else if (t.is_math()) {
    for (int i = -math_window; i <= math_window; ++i) raw.push_back(i);
    BigInt big = BigInt(1) << 256;
    raw.push_back(-big);
    raw.push_back(big);
  } else {
    raw = {t.min(), t.min() + 1, -1, 0, 1, t.max() - 1, t.max()};
  }
  std::set<BigInt> seen;
  std::vector<BigInt> out;
  for (const BigInt& v : raw) {
    if (!t.is_math() && (v < t.min() || v > t.max())) continue;
    if (seen.insert(v).second) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<Value> base_candidates(const BaseType& b, const BoundsConfig& cfg) {
  std::vector<Value> out;
  switch (b.sort) {
    case BaseType::Sort::Int:
      for (const BigInt& n : cfg.int_samples(*b.int_type)) out.push_back(Value::integer(n));
      break;
    case BaseType::Sort::Bool:
      out.push_back(Value::boolean(false));
      out.push_back(Value::boolean(true));
      break;
    default:
      for (std::size_t a = 0; a < cfg.addr_domain; ++a)
        out.push_back(Value::address(static_cast<Addr>(a)));
      break;
  }
  return out;
}

std::vector<Value> mu_candidates(const MappingType& mu, const BoundsConfig& cfg) {
  if (mu.is_base()) return base_candidates(mu.as_base(), cfg);
  const auto& m = mu.as_map();
  std::vector<Value> out;
  out.push_back(default_value(mu));
  std::vector<Value> keys = base_candidates(m.key, cfg);
  if (keys.size() > cfg.map_footprint) keys.resize(cfg.map_footprint);
  std::vector<Value> vals = mu_candidates(m.value, cfg);
  Value def = default_value(m.value);
  for (const Value& k : keys) {
    for (const Value& v : vals) {
      if (v == def) continue;
      std::map<Value, Value> table;
      table.emplace(k, v);
      out.push_back(Value::mapping(meta_sort(m.key), def, std::move(table)));
      if (out.size() >= cfg.max_value_candidates) return out;
    }
  }
  return out;
}

// Builds a default-valued instance of `contract` into the store; returns its
// address, or nullopt when the depth budget runs out or the contract is
// unknown (possible only with hand-built or cyclic Sigmas).
std::optional<Addr> build_default_instance(const SigmaView& sig, const std::string& contract,
                                           State& store, std::size_t depth,
                                           const BoundsConfig& cfg) {
  const StorageLayout* layout = sig.layout(contract);
  if (!layout || depth == 0) return std::nullopt;
  ContractInstance inst;
  inst.type = contract;
  // Fields are filled in layout order so nested allocations are deterministic.
  std::vector<std::pair<std::string, Value>> pending;
  for (const auto& [x, st] : *layout) {
    if (st.is_mapping()) {
      pending.emplace_back(x, default_value(st.as_mapping()));
    } else {
      auto sub = build_default_instance(sig, st.contract_name(), store, depth - 1, cfg);
      if (!sub) return std::nullopt;
      pending.emplace_back(x, Value::address(*sub));
    }
  }
  for (auto& [x, v] : pending) inst.vars.emplace(std::move(x), std::move(v));
  Addr l = store.fresh();
  store.slots[l] = std::move(inst);
  return l;
}

std::vector<Addr> instances_of(const SigmaView& sig, const State& s, const std::string& contract) {
  std::vector<Addr> out;
  for (const auto& [l, inst] : s.slots) {
    if (inst.type != contract) continue;
    if (loc_has_contract(sig, s, l, contract)) out.push_back(l);
  }
  return out;
}

}  // namespace

std::vector<Value> value_candidates(const SigmaView& sig, const State& s, const SlotType& st,
                                    const BoundsConfig& cfg) {
  if (st.is_mapping()) return mu_candidates(st.as_mapping(), cfg);
  std::vector<Value> out;
  for (Addr l : instances_of(sig, s, st.contract_name())) out.push_back(Value::address(l));
  return out;
}

ContextSet enumerate_contexts(const SigmaView& sig, const InterfaceEnv& iface,
                              const std::optional<std::string>& contract,
                              const BoundsConfig& cfg) {
  ContextSet out;

  // Base store: auxiliary instances for contract-typed arguments.
  State base;
  for (const auto& [x, alpha] : iface) {
    if (!alpha.is_contract_addr()) continue;
    const std::string& c = alpha.contract();
    if (!instances_of(sig, base, c).empty()) continue;
    if (!build_default_instance(sig, c, base, cfg.store_depth, cfg)) {
      out.failure = "bounds too small to build a well-typed store for " + c;
      return out;
    }
  }

  // Store variants: the subject contract's fields range over the sample sets.
  std::vector<State> stores;
  if (contract) {
    const StorageLayout* layout = sig.layout(*contract);
    if (!layout) {
      out.failure = "contract " + *contract + " not in Sigma";
      return out;
    }
    State proto = base;
    std::vector<std::pair<std::string, std::vector<Value>>> columns;
    for (const auto& [x, st] : *layout) {
      if (st.is_mapping()) {
        columns.emplace_back(x, mu_candidates(st.as_mapping(), cfg));
      } else {
        auto sub = build_default_instance(sig, st.contract_name(), proto, cfg.store_depth, cfg);
        if (!sub) {
          out.failure = "bounds too small to build a well-typed store for " + *contract;
          return out;
        }
        columns.emplace_back(x, std::vector<Value>{Value::address(*sub)});
      }
    }
    std::vector<std::map<std::string, Value>> variants{{}};
    for (const auto& [x, cands] : columns) {
      std::vector<std::map<std::string, Value>> next;
      for (const auto& partial : variants) {
        for (const Value& v : cands) {
          auto m = partial;
          m.emplace(x, v);
          next.push_back(std::move(m));
          if (next.size() > cfg.max_contexts) {
            out.truncated = true;
            break;
          }
        }
        if (out.truncated) break;
      }
      variants = std::move(next);
      if (out.truncated) break;
    }
    Addr subject = proto.fresh();
    for (auto& vars : variants) {
      State st = proto;
      st.slots[subject] = ContractInstance{*contract, std::move(vars)};
      stores.push_back(std::move(st));
    }
  } else {
    stores.push_back(base);
  }

  // Environment columns.
  std::vector<Value> addr_samples;
  for (std::size_t a = 0; a < cfg.addr_domain; ++a)
    addr_samples.push_back(Value::address(static_cast<Addr>(a)));
  std::vector<Value> callvalues;
  for (const BigInt& n : cfg.int_samples(uint256())) callvalues.push_back(Value::integer(n));

  for (const State& store : stores) {
    std::vector<std::optional<Addr>> locs;
    if (contract) {
      for (Addr l : instances_of(sig, store, *contract)) locs.push_back(l);
      if (locs.empty()) continue;
    } else {
      locs.push_back(std::nullopt);
    }

    std::vector<std::pair<std::string, std::vector<Value>>> argcols;
    bool buildable = true;
    for (const auto& [x, alpha] : iface) {
      std::vector<Value> cands;
      if (alpha.is_base()) {
        cands = base_candidates(alpha.as_base(), cfg);
      } else {
        for (Addr l : instances_of(sig, store, alpha.contract()))
          cands.push_back(Value::address(l));
      }
      if (cands.empty()) {
        out.failure = "no well-typed candidate values for argument " + x;
        buildable = false;
        break;
      }
      argcols.emplace_back(x, std::move(cands));
    }
    if (!buildable) continue;

    std::vector<Env> envs{{}};
    auto extend = [&](const std::string& name, const std::vector<Value>& cands) {
      std::vector<Env> next;
      for (const auto& e : envs) {
        for (const Value& v : cands) {
          Env e2 = e;
          e2[name] = v;
          next.push_back(std::move(e2));
          if (next.size() > cfg.max_contexts) {
            out.truncated = true;
            return;
          }
        }
      }
      envs = std::move(next);
    };
    extend("caller", addr_samples);
    if (!out.truncated) extend("origin", addr_samples);
    if (!out.truncated) extend("callvalue", callvalues);
    for (const auto& [x, cands] : argcols) {
      if (out.truncated) break;
      extend(x, cands);
    }

    for (const auto& loc : locs) {
      for (const Env& env : envs) {
        if (out.contexts.size() >= cfg.max_contexts) {
          out.truncated = true;
          break;
        }
        out.contexts.push_back(EvalContext{store, env, loc});
      }
      if (out.truncated) break;
    }
    if (out.truncated) break;
  }

  if (out.contexts.empty() && out.failure.empty())
    out.failure = "bounds produced no well-typed context";
  return out;
}

std::vector<Env> enumerate_step_envs(const SigmaView& sig, const State& s,
                                     const InterfaceEnv& iface, const BoundsConfig& cfg) {
  std::vector<Addr> callers;
  for (const auto& [l, inst] : s.slots) callers.push_back(l);
  callers.push_back(s.fresh());

  std::vector<std::pair<std::string, std::vector<Value>>> argcols;
  for (const auto& [x, alpha] : iface) {
    std::vector<Value> cands;
    if (alpha.is_base()) {
      cands = base_candidates(alpha.as_base(), cfg);
    } else {
      for (Addr l : instances_of(sig, s, alpha.contract())) cands.push_back(Value::address(l));
    }
    if (cands.empty()) return {};
    argcols.emplace_back(x, std::move(cands));
  }

  std::vector<Env> envs;
  for (Addr c : callers) {
    for (const BigInt& cv : cfg.step_callvalues) {
      Env base;
      base["caller"] = Value::address(c);
      base["origin"] = Value::address(c);
      base["callvalue"] = Value::integer(cv);
      std::vector<Env> acc{std::move(base)};
      for (const auto& [x, cands] : argcols) {
        std::vector<Env> next;
        for (const auto& e : acc) {
          for (const Value& v : cands) {
            Env e2 = e;
            e2[x] = v;
            next.push_back(std::move(e2));
          }
        }
        acc = std::move(next);
      }
      for (auto& e : acc) {
        envs.push_back(std::move(e));
        if (envs.size() >= cfg.max_contexts) return envs;
      }
    }
  }
  return envs;
}

}  // namespace act
