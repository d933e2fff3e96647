/**
 * Buzzer playback. Tones are synthesized at whatever frequency the
 * server reports in its tone events, with gain following the pushed
 * audibility level; where audio is unavailable the caller falls back to
 * the visual pulse alone.
 */

export function gainForLevel(level: number): number {
  if (!Number.isFinite(level) || level <= 0) return 0;
  return Math.min(level, 1);
}

export interface ToneCue {
  freqHz: number | null; // null: keep frequency, adjust gain only
  level: number;
}

/** Extract the audio cue, if any, from one server message. */
export function audioCue(msg: {
  type: string;
  event?: { kind: string; freq_hz?: unknown; tag_id?: unknown };
  level?: number;
  tag_id?: string;
}): ToneCue | "stop" | null {
  if (msg.type === "buzzing" && typeof msg.level === "number") {
    return { freqHz: null, level: msg.level };
  }
  if (msg.type === "event" && msg.event) {
    if (msg.event.kind === "tone_start" && typeof msg.event.freq_hz === "number") {
      return { freqHz: msg.event.freq_hz, level: -1 };
    }
    if (msg.event.kind === "tone_stop") {
      return "stop";
    }
  }
  return null;
}

type Ctx = AudioContext;

export class TonePlayer {
  private ctx: Ctx | null = null;
  private osc: OscillatorNode | null = null;
  private gainNode: GainNode | null = null;
  private lastGain = 0;

  constructor(private readonly makeContext: () => Ctx | null = defaultContext) {}

  apply(cue: ToneCue | "stop"): void {
    if (cue === "stop") {
      this.stop();
      return;
    }
    if (cue.freqHz !== null) {
      this.startTone(cue.freqHz);
    }
    if (cue.level >= 0) {
      this.lastGain = gainForLevel(cue.level);
      if (this.gainNode && this.ctx) {
        this.gainNode.gain.setTargetAtTime(this.lastGain, this.ctx.currentTime, 0.05);
      }
    }
  }

  private startTone(freqHz: number): void {
    if (this.ctx === null) {
      this.ctx = this.makeContext();
      if (this.ctx === null) return; // no audio here; visual pulse only
    }
    this.stopOscillator();
    this.osc = this.ctx.createOscillator();
    this.gainNode = this.ctx.createGain();
    this.osc.type = "square";
    this.osc.frequency.value = freqHz;
    this.gainNode.gain.value = this.lastGain;
    this.osc.connect(this.gainNode);
    this.gainNode.connect(this.ctx.destination);
    this.osc.start();
  }

  stop(): void {
    this.stopOscillator();
  }

  private stopOscillator(): void {
    if (this.osc) {
      try {
        this.osc.stop();
        this.osc.disconnect();
      } catch {
        // already stopped
      }
      this.osc = null;
    }
    if (this.gainNode) {
      this.gainNode.disconnect();
      this.gainNode = null;
    }
  }
}

function defaultContext(): Ctx | null {
  const W = globalThis as unknown as {
    AudioContext?: new () => Ctx;
    webkitAudioContext?: new () => Ctx;
  };
  const Ctor = W.AudioContext ?? W.webkitAudioContext;
  try {
    return Ctor ? new Ctor() : null;
  } catch {
    return null;
  }
}
