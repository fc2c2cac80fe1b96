#include <pchain/vm/gas.hpp>

namespace pchain::vm {

std::uint64_t GasSchedule::gas_for(chain::ActionTag tag) const
{
    using chain::ActionTag;
    switch (tag) {
    case ActionTag::CreateCompany: return add_company;
    case ActionTag::EnrollProduct: return product_enrollment;
    case ActionTag::RegisterSeller: return seller_registration;
    case ActionTag::BuyProduct: return buy_product;
    case ActionTag::DistributeProduct: return product_distribution;
    case ActionTag::Transfer: return transfer;
    case ActionTag::Mint: return 0;
    }
    return 0;
}

}  // namespace pchain::vm
