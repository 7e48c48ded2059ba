#pragma once

// Declared variable universe for every polynomial value.
// Slot layout: [x_1..x_n][u?][y_1..y_t].  The x block leads so that block
// elimination orders compare it first.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rrc {

class VarContext;
using CtxPtr = std::shared_ptr<const VarContext>;

class VarContext {
public:
    static CtxPtr make(std::vector<std::string> params, std::vector<std::string> vars,
                       std::optional<std::string> aux = std::nullopt) {
        auto c = std::make_shared<VarContext>();
        c->params_ = std::move(params);
        c->vars_ = std::move(vars);
        c->aux_ = std::move(aux);
        c->validate();
        return c;
    }

    int n() const { return static_cast<int>(vars_.size()); }
    int t() const { return static_cast<int>(params_.size()); }
    bool has_aux() const { return aux_.has_value(); }
    int slots() const { return n() + (has_aux() ? 1 : 0) + t(); }

    int var_slot(int i) const { return i; }
    int aux_slot() const { return has_aux() ? n() : -1; }
    int param_slot(int i) const { return n() + (has_aux() ? 1 : 0) + i; }
    int first_param_slot() const { return n() + (has_aux() ? 1 : 0); }

    bool is_var_slot(int s) const { return s < n(); }
    bool is_aux_slot(int s) const { return has_aux() && s == n(); }
    bool is_param_slot(int s) const { return s >= first_param_slot() && s < slots(); }

    const std::vector<std::string>& params() const { return params_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::optional<std::string>& aux() const { return aux_; }

    const std::string& slot_name(int s) const {
        if (is_var_slot(s)) return vars_[s];
        if (is_aux_slot(s)) return *aux_;
        return params_[s - first_param_slot()];
    }

    int slot_of(const std::string& name) const {
        for (int s = 0; s < slots(); ++s)
            if (slot_name(s) == name) return s;
        return -1;
    }

    bool same_as(const VarContext& o) const {
        return params_ == o.params_ && vars_ == o.vars_ && aux_ == o.aux_;
    }

    // Context of the image of the specialization map y -> eta: x (and u) only.
    CtxPtr specialized() const { return make({}, vars_, aux_); }

    // Context of the coefficient ring Q[y].
    CtxPtr params_only() const { return make(params_, {}); }

    // Same x and y blocks with an auxiliary variable adjoined.
    CtxPtr with_aux(const std::string& name) const {
        if (has_aux()) throw Error("context already has an auxiliary variable");
        return make(params_, vars_, name);
    }

    void validate() const {
        for (int s = 0; s < slots(); ++s) {
            if (slot_name(s).empty()) throw Error("empty variable name");
            for (int r = s + 1; r < slots(); ++r)
                if (slot_name(s) == slot_name(r))
                    throw Error("duplicate variable name: " + slot_name(s));
        }
    }

private:
    std::vector<std::string> params_;
    std::vector<std::string> vars_;
    std::optional<std::string> aux_;
};

inline bool same_ctx(const CtxPtr& a, const CtxPtr& b) {
    return a == b || (a && b && a->same_as(*b));
}

inline void require_same_ctx(const CtxPtr& a, const CtxPtr& b) {
    if (!same_ctx(a, b)) throw ContextMismatchError();
}

} // namespace rrc
