//! The arrow category of the pointed skeleton restricted to inert maps.

use std::sync::Arc;

use crate::fincat::{full_subcategory, FinCategory, Functor, MorId};
use crate::grothendieck::{build_arrow_category, ArrowCategory};
use crate::monoidal::PointedSkeleton;
use crate::report::ValidationReport;

#[derive(Clone, Debug)]
pub struct InertArrowCategory {
    pub arrows: ArrowCategory,
    pub category: Arc<FinCategory>,
    pub inclusion: Functor,
    /// Object `i` is the inert map `objects[i]` of the skeleton.
    pub objects: Vec<MorId>,
}

impl InertArrowCategory {
    pub fn validate(&self, s: &PointedSkeleton) -> ValidationReport {
        let mut report = ValidationReport::new();
        for &f in &self.objects {
            if !s.classify(f).inert {
                report.violation("inert", s.category.describe_mor(f));
            }
        }
        report
    }
}

pub fn build_inert_arrow_category(s: &PointedSkeleton) -> InertArrowCategory {
    let arrows = build_arrow_category(&s.category);
    let objects: Vec<MorId> = s.category.morphisms().filter(|&f| s.classify(f).inert).collect();
    let (category, inclusion) = full_subcategory(&arrows.category, &objects, "Inert");
    InertArrowCategory {
        arrows,
        category,
        inclusion,
        objects,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    #[test]
    fn inert_arrows_up_to_two() {
        let s = PointedSkeleton::new(2);
        let g = build_inert_arrow_category(&s);
        assert!(g.validate(&s).is_empty());
        assert!(validate_category(&g.category).is_empty());
        // identities of <0>,<1>,<2>; <1> -> <0>; <2> -> <0>; two projections <2> -> <1>; the swap of <2>
        assert_eq!(g.objects.len(), 8);
        for f in s.category.morphisms() {
            assert_eq!(g.objects.contains(&f), s.classify(f).inert);
        }
    }
}
