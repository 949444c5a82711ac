use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource caps and output options shared by every operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SessionConfig {
    /// Maximal degree accepted by factorization over Q.
    pub q_factor_cap: usize,
    /// Maximal `deg(p) * [F:Q]` accepted by factorization over a number field.
    /// Also bounds the internal resultant/norm polynomials factored over Q.
    pub field_factor_cap: usize,
    /// Maximal absolute degree of a field produced by primitive element search.
    pub primitive_element_cap: usize,
    pub group_order_cap: usize,
    pub weyl_order_cap: usize,
    /// Height bound for orbit-sum generators of the spherical algebra.
    pub generator_height: usize,
    pub output_format: OutputFormat,
    /// All algorithms are deterministic; kept for forward compatibility.
    pub seedless: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            q_factor_cap: 16,
            field_factor_cap: 48,
            primitive_element_cap: 48,
            group_order_cap: 512,
            weyl_order_cap: 10080,
            generator_height: 1,
            output_format: OutputFormat::Json,
            seedless: true,
        }
    }
}

/// The degree caps consumed by the arithmetic layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub q: usize,
    pub field: usize,
    pub primitive: usize,
}

impl Default for Caps {
    fn default() -> Self {
        SessionConfig::default().caps()
    }
}

impl SessionConfig {
    pub fn caps(&self) -> Caps {
        Caps { q: self.q_factor_cap, field: self.field_factor_cap, primitive: self.primitive_element_cap }
    }

    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("q_factor_cap", self.q_factor_cap),
            ("field_factor_cap", self.field_factor_cap),
            ("primitive_element_cap", self.primitive_element_cap),
            ("group_order_cap", self.group_order_cap),
            ("weyl_order_cap", self.weyl_order_cap),
            ("generator_height", self.generator_height),
        ];
        for (name, v) in caps {
            if v == 0 {
                return Err(Error::Malformed(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// Applies overrides of the form `q=16,field=48,primitive=48,group=512,weyl=10080,height=1`.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Malformed(format!("cap override `{item}` lacks `=`")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("cap override `{item}` is not an integer")))?;
            match key.trim() {
                "q" => self.q_factor_cap = value,
                "field" => self.field_factor_cap = value,
                "primitive" => self.primitive_element_cap = value,
                "group" => self.group_order_cap = value,
                "weyl" => self.weyl_order_cap = value,
                "height" => self.generator_height = value,
                other => return Err(Error::Malformed(format!("unknown cap `{other}`"))),
            }
        }
        self.validate()
    }
}
