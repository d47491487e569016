use qsurf_core::enumeration::{beta_table, DEFAULT_BUDGET};
use qsurf_core::montecarlo::simulate;
use qsurf_core::{build_surface_code, Bias, ChannelModel, Decoder, DecoderKind};

fn main() -> qsurf_core::Result<()> {
    let code = build_surface_code(3, 3)?;
    let mwpm = Decoder::new(&code, DecoderKind::Mwpm, None)?;
    let table = beta_table(&code, &mwpm, [2, 3], DEFAULT_BUDGET)?;
    let channel = ChannelModel::from_bias(0.05, Bias::from_value(10.0))?;
    let est = simulate(&code, &mwpm, &channel, 100_000, 1)?;
    println!("{} {:?}", table.code, est.p_hat);
    Ok(())
}
