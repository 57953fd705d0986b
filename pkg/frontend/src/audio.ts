// Optional sound: a noise-based crackle while the burning sound is audible
// and a two-tone klaxon once the alarm has been raised. Everything is
// synthesised; there are no audio assets.

export class DrillAudio {
  private ctx: AudioContext | null = null;
  private crackle: { source: AudioBufferSourceNode; gain: GainNode } | null = null;
  private klaxon: { osc: OscillatorNode; gain: GainNode; timer: number } | null = null;
  enabled = true;

  private ensure(): AudioContext | null {
    if (!this.enabled) return null;
    if (!this.ctx) {
      const Ctor = window.AudioContext ?? (window as unknown as { webkitAudioContext?: typeof AudioContext }).webkitAudioContext;
      if (!Ctor) return null;
      this.ctx = new Ctor();
    }
    if (this.ctx.state === "suspended") void this.ctx.resume();
    return this.ctx;
  }

  setEnabled(on: boolean): void {
    this.enabled = on;
    if (!on) {
      this.stopCrackle();
      this.stopKlaxon();
    }
  }

  /** Reconcile sound with the latest snapshot. */
  update(auditoryCue: boolean, alarmRaised: boolean, burning: boolean): void {
    if (auditoryCue && burning) this.startCrackle();
    else this.stopCrackle();
    if (alarmRaised && burning) this.startKlaxon();
    else this.stopKlaxon();
  }

  private startCrackle(): void {
    const ctx = this.ensure();
    if (!ctx || this.crackle) return;
    const seconds = 1.5;
    const buffer = ctx.createBuffer(1, ctx.sampleRate * seconds, ctx.sampleRate);
    const data = buffer.getChannelData(0);
    for (let i = 0; i < data.length; i++) {
      // sparse pops over low rumble reads as burning
      data[i] = (Math.random() * 2 - 1) * (Math.random() < 0.03 ? 0.9 : 0.12);
    }
    const source = ctx.createBufferSource();
    source.buffer = buffer;
    source.loop = true;
    const gain = ctx.createGain();
    gain.gain.value = 0.12;
    source.connect(gain).connect(ctx.destination);
    source.start();
    this.crackle = { source, gain };
  }

  private stopCrackle(): void {
    if (!this.crackle) return;
    this.crackle.source.stop();
    this.crackle.source.disconnect();
    this.crackle = null;
  }

  private startKlaxon(): void {
    const ctx = this.ensure();
    if (!ctx || this.klaxon) return;
    const osc = ctx.createOscillator();
    const gain = ctx.createGain();
    osc.type = "square";
    osc.frequency.value = 700;
    gain.gain.value = 0.05;
    osc.connect(gain).connect(ctx.destination);
    osc.start();
    let high = true;
    const timer = window.setInterval(() => {
      high = !high;
      osc.frequency.setValueAtTime(high ? 700 : 520, ctx.currentTime);
    }, 380);
    this.klaxon = { osc, gain, timer };
  }

  private stopKlaxon(): void {
    if (!this.klaxon) return;
    window.clearInterval(this.klaxon.timer);
    this.klaxon.osc.stop();
    this.klaxon.osc.disconnect();
    this.klaxon = null;
  }
}
