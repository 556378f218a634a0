use super::element::{check_same, Element};
use super::spec::Algebra;
use crate::error::{Error, Result};

/// Algebra map fixed by generator images, checked to respect the bracket relations.
#[derive(Clone, Debug)]
pub struct Hom {
    source: Algebra,
    images: Vec<Element>,
}

impl Hom {
    /// `images[g]` is the image of the generator at flat position `g` of `source`.
    pub fn new(source: &Algebra, images: Vec<Element>) -> Result<Hom> {
        if images.len() != source.n_generators() {
            return Err(Error::NotAHomomorphism(format!(
                "expected {} generator images, got {}",
                source.n_generators(),
                images.len()
            )));
        }
        let target = images[0].algebra().clone();
        for img in &images[1..] {
            check_same(&target, img.algebra())?;
        }
        if target.class() != source.class() {
            return Err(Error::NotAHomomorphism(
                "source and target belong to different classes".into(),
            ));
        }
        let hom = Hom {
            source: source.clone(),
            images,
        };
        let w = source.n_generators();
        for i in 0..w {
            for j in i + 1..w {
                let lhs = hom.images[i].bracket(&hom.images[j])?;
                let rel = Element::from_terms(source, source.generator_bracket(i, j).clone());
                let rhs = hom.apply(&rel)?;
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism(format!(
                        "{{{}, {}}} maps to {lhs}, expected {rhs}",
                        source.generator(i),
                        source.generator(j)
                    )));
                }
            }
        }
        Ok(hom)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        self.images[0].algebra()
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Substitutes the images into the normal form of `x` (p's before q's) and re-normalizes.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        check_same(&self.source, x.algebra())?;
        let target = self.target();
        let w = self.source.n_generators();
        let mut max_exp = vec![0u32; w];
        for m in x.terms().keys() {
            for (g, e) in m.exponents().iter().enumerate() {
                max_exp[g] = max_exp[g].max(*e);
            }
        }
        let powers: Vec<Vec<Element>> = (0..w)
            .map(|g| {
                let mut v = vec![target.one()];
                for _ in 0..max_exp[g] {
                    let next = v.last().expect("nonempty").try_mul(&self.images[g]).expect("same algebra");
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = target.zero();
        for (m, c) in x.terms() {
            let mut prod = target.constant(c.clone());
            for (g, e) in m.exponents().iter().enumerate() {
                if *e > 0 {
                    prod = prod.try_mul(&powers[g][*e as usize])?;
                }
            }
            out = out.try_add(&prod)?;
        }
        Ok(out)
    }
}

/// Applies the homomorphism given by generator images to `x`.
pub fn hom_apply(images: &[Element], x: &Element) -> Result<Element> {
    Hom::new(x.algebra(), images.to_vec())?.apply(x)
}
