//! Homomorphisms given by generator images, tabulated and verified over the
//! full element list.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use std::sync::{Arc, OnceLock};

/// A homomorphism between permutation groups, determined by generator images.
///
/// Tabulation walks the source's multiplication closure and checks every
/// edge, so a successfully tabulated map is a verified homomorphism.
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    gen_images: Vec<Perm>,
    table: OnceLock<Result<Arc<Vec<Perm>>>>,
    kernel: OnceLock<Result<PermGroup>>,
}

impl GroupHom {
    pub fn new(source: PermGroup, target: PermGroup, gen_images: Vec<Perm>) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::NotAnAutomorphism(format!(
                "expected {} generator images, got {}",
                source.generators().len(),
                gen_images.len()
            )));
        }
        for im in &gen_images {
            if im.degree() != target.degree() {
                return Err(Error::MalformedPermutation(
                    "generator image degree does not match the target".into(),
                ));
            }
            if !target.contains(im) {
                return Err(Error::NotASubgroup(
                    "generator image lies outside the target group".into(),
                ));
            }
        }
        Ok(GroupHom {
            source,
            target,
            gen_images,
            table: OnceLock::new(),
            kernel: OnceLock::new(),
        })
    }

    pub fn identity(group: &PermGroup) -> Self {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            gen_images: group.generators().to_vec(),
            table: OnceLock::new(),
            kernel: OnceLock::new(),
        }
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn gen_images(&self) -> &[Perm] {
        &self.gen_images
    }

    fn table(&self) -> Result<Arc<Vec<Perm>>> {
        self.table
            .get_or_init(|| self.tabulate())
            .as_ref()
            .map(Arc::clone)
            .map_err(|e| Error::Propagated(format!("{e}")))
    }

    /// Image of every source element, indexed like the source element list.
    /// Every multiplication edge is checked, which verifies the hom property.
    fn tabulate(&self) -> Result<Arc<Vec<Perm>>> {
        let elems = self.source.elements()?;
        let n = elems.len();
        let mut images: Vec<Option<Perm>> = vec![None; n];
        images[elems.identity_index() as usize] = Some(self.target.identity());
        // fill along the word structure
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&i| elems.word_of(i).len());
        for &i in &order {
            if images[i as usize].is_some() {
                continue;
            }
            let mut img = self.target.identity();
            for gi in elems.word_of(i) {
                img = img.then(&self.gen_images[gi as usize]);
            }
            images[i as usize] = Some(img);
        }
        let images: Vec<Perm> = images.into_iter().map(Option::unwrap).collect();
        // verify every edge e*g
        for i in 0..n as u32 {
            let e = elems.get(i);
            for (gi, g) in self.source.generators().iter().enumerate() {
                let f = e.then(g);
                let fi = elems.index_of(&f).unwrap();
                if images[fi as usize] != images[i as usize].then(&self.gen_images[gi]) {
                    return Err(Error::NotAnAutomorphism(
                        "generator images do not respect a relation of the source".into(),
                    ));
                }
            }
        }
        Ok(Arc::new(images))
    }

    pub fn apply(&self, g: &Perm) -> Result<Perm> {
        let elems = self.source.elements()?;
        let idx = elems
            .index_of(g)
            .ok_or_else(|| Error::NotASubgroup("element outside hom source".into()))?;
        Ok(self.table()?[idx as usize].clone())
    }

    pub fn apply_indexed(&self, idx: u32) -> Result<Perm> {
        Ok(self.table()?[idx as usize].clone())
    }

    pub fn kernel(&self) -> Result<PermGroup> {
        self.kernel
            .get_or_init(|| {
                let elems = self.source.elements()?;
                let table = self.table()?;
                PermGroup::from_members(
                    self.source.degree(),
                    elems
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| table[*i].is_identity())
                        .map(|(_, e)| e),
                )
            })
            .as_ref()
            .cloned()
            .map_err(|e| Error::Propagated(format!("{e}")))
    }

    pub fn image(&self) -> Result<PermGroup> {
        self.table()?;
        let img = PermGroup::from_generators(self.target.degree(), self.gen_images.clone())?;
        Ok(img)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.is_trivial())
    }

    /// Preimage representative of a target element, by table scan.
    pub fn preimage(&self, t: &Perm) -> Result<Option<Perm>> {
        let table = self.table()?;
        let elems = self.source.elements()?;
        for (i, img) in table.iter().enumerate() {
            if img == t {
                return Ok(Some(elems.get(i as u32).clone()));
            }
        }
        Ok(None)
    }
}

/// An inclusion of one permutation group in another on the same points.
pub struct Embedding {
    sub: PermGroup,
    amb: PermGroup,
    fusion: OnceLock<Result<Arc<Vec<usize>>>>,
}

impl Embedding {
    pub fn new(sub: PermGroup, amb: PermGroup) -> Result<Self> {
        if !sub.is_subgroup_of(&amb) {
            return Err(Error::NotASubgroup(format!(
                "order {} group is not inside the order {} group",
                sub.order(),
                amb.order()
            )));
        }
        Ok(Embedding {
            sub,
            amb,
            fusion: OnceLock::new(),
        })
    }

    pub fn sub(&self) -> &PermGroup {
        &self.sub
    }

    pub fn amb(&self) -> &PermGroup {
        &self.amb
    }

    /// Class fusion: for each class of the subgroup, the ambient class that
    /// contains it.
    pub fn fusion(&self) -> Result<Arc<Vec<usize>>> {
        self.fusion
            .get_or_init(|| {
                let sub_cls = self.sub.conjugacy_classes()?;
                let mut out = Vec::with_capacity(sub_cls.count());
                for c in 0..sub_cls.count() {
                    out.push(self.amb.class_of(sub_cls.rep(c))?);
                }
                Ok(Arc::new(out))
            })
            .as_ref()
            .map(Arc::clone)
            .map_err(|e| Error::Propagated(format!("{e}")))
    }
}
