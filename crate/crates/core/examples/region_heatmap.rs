//! Rasterize a range endpoint over the unit square and render it as SVG.
//!
//! cargo run --release --example region_heatmap -- [mm|pb|eg|dec] [min|max|zero] [out.svg]

use partisan_symmetry::bounds::{region_raster, RasterSpec};
use partisan_symmetry::render::raster_svg;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let metric = args.first().map_or("mm", String::as_str).parse().map_err(anyhow::Error::msg)?;
    let kind = args.get(1).map_or("max", String::as_str).parse().map_err(anyhow::Error::msg)?;
    let spec = RasterSpec { grid: 101, ..RasterSpec::new(metric, kind) };
    let raster = region_raster(&spec)?;
    let out = args.get(2).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("region.svg"));
    std::fs::write(&out, raster_svg(&raster))?;
    let filled = raster.cells.iter().filter(|c| c.value != partisan_symmetry::bounds::CellValue::Null).count();
    println!("{metric} {kind}: {filled} of {} cells feasible, wrote {}", raster.cells.len(), out.display());
    Ok(())
}
